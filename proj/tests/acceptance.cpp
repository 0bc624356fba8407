// Acceptance suite: one pass/fail line per criterion, non-zero exit when
// anything fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "slp/clausal.hpp"
#include "slp/oracle.hpp"
#include "slp/query.hpp"

using namespace slp;
using slp_tests::GenOptions;
using slp_tests::random_program;

namespace {

using Clock = std::chrono::steady_clock;

struct Fail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define EXPECT(cond, msg)                     \
  do {                                        \
    if (!(cond)) throw Fail(std::string(msg)); \
  } while (0)

struct Pipeline {
  Vocabulary voc;
  Program prog;
  ResidualProgram res;
  DefixResult fix;

  explicit Pipeline(const std::string& src) : res(FactStore(&voc.atoms)) {
    prog = load_program(src, voc);
    FactStore store = ground_fixpoint(prog, voc);
    res = residual(std::move(store), prog.monitored, voc);
    fix = compute_defix(res, voc);
  }
  AtomId atom(const std::string& n) { return voc.atoms.intern(n, {}); }
  DefAtomId def(const std::string& n) {
    return voc.defaults.intern_atoms({atom(n)});
  }
};

// --------------------------------------------------------------- criteria

void criterion1() {
  auto t0 = Clock::now();
  Pipeline pl("car. runs <- car & not broken. #monitor not broken.");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("car")), "car not entailed");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("runs")), "runs not entailed");
  EXPECT(entails_default(pl.fix, pl.def("broken")), "not broken not entailed");
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  EXPECT(dt < 0.1, "took " + std::to_string(dt) + "s, budget 0.1s");
}

void criterion2() {
  Pipeline pl(
      "runs <- not broken. broken <- not fixed.\n"
      "#monitor not fixed. #monitor not runs.");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("broken")), "broken not entailed");
  EXPECT(entails_default(pl.fix, pl.def("fixed")), "not fixed not entailed");
  EXPECT(entails_default(pl.fix, pl.def("runs")), "not runs not entailed");
  // stratified and non-disjunctive: no default atoms remain
  for (const auto& f : pl.res.store.contents())
    EXPECT(f.cond.empty(), "residual still holds default atoms");
}

void criterion3() {
  Pipeline pl(
      "visit_europe | visit_australia.\n"
      "happy <- visit_europe | visit_australia.\n"
      "bankrupt <- visit_europe & visit_australia.\n"
      "prudent <- not(visit_europe & visit_australia).\n"
      "disappointed <- not(visit_europe | visit_australia).\n"
      "#monitor not bankrupt. #monitor not disappointed.\n"
      "#monitor not visit_europe.\n");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("happy")), "happy not entailed");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("prudent")),
         "prudent not entailed");
  EXPECT(entails_default(pl.fix, pl.def("bankrupt")),
         "not bankrupt not entailed");
  EXPECT(entails_default(pl.fix, pl.def("disappointed")),
         "not disappointed not entailed");
  DefAtomId both = pl.voc.defaults.intern_atoms(
      {pl.atom("visit_europe"), pl.atom("visit_australia")});
  EXPECT(entails_default(pl.fix, both),
         "not(visit_europe & visit_australia) not entailed");
  EXPECT(!entails_default(pl.fix, pl.def("visit_europe")),
         "not visit_europe wrongly entailed");
}

void criterion4() {
  Pipeline pl("p | q <- not r. q <- not q. r <- q. #monitor not p.");
  EXPECT(pl.res.critNeg.size() == 3, "expected three critical default atoms");
  EXPECT((pl.fix.defix == std::vector<uint64_t>{0b001, 0b111}),
         "final valuations differ from {(1,1,1),(1,0,0)}");
  EXPECT((pl.fix.objsetPhase1 == std::vector<uint64_t>{0b000, 0b001, 0b110}),
         "first objective-parts table differs");
  EXPECT((pl.fix.objsetLast == std::vector<uint64_t>{0b000, 0b110}),
         "final objective-parts table differs");
  EXPECT(entails_default(pl.fix, pl.def("p")), "not p not entailed");
  EXPECT(!entails_default(pl.fix, pl.def("q")), "not q wrongly entailed");
  EXPECT(!entails_default(pl.fix, pl.def("r")), "not r wrongly entailed");
}

void criterion5() {
  Pipeline pl(
      "work <- not tired. sleep <- not work. tired <- not sleep.\n"
      "angry <- not paid & work. paid. #monitor not angry.");
  EXPECT(!pl.fix.inconsistent, "fixed point empty");
  EXPECT(entails_atom(pl.fix, pl.res, pl.atom("paid")), "paid not entailed");
  EXPECT(entails_default(pl.fix, pl.def("angry")), "not angry not entailed");
}

void criterion6() {
  Vocabulary voc;
  Program p1 = load_program("p <- not q.", voc);
  FactStore s1 = ground_fixpoint(p1, voc);
  ResidualProgram r1 = residual(std::move(s1), {}, voc);
  auto c1 = r1.store.contents();
  EXPECT(c1.size() == 1 && fact_text(c1[0], voc) == "p.",
         "residual of {p <- not q} is not {p}");

  Vocabulary voc2;
  Program p2 = load_program("p | q. s <- not p & not q & not r.", voc2);
  FactStore s2 = ground_fixpoint(p2, voc2);
  ResidualProgram r2 = residual(std::move(s2), {}, voc2);
  auto c2 = r2.store.contents();
  EXPECT(c2.size() == 1 && fact_text(c2[0], voc2) == "p | q.",
         "negative reduction did not shrink the two-rule program");
}

void criterion7() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(70007);
  GenOptions opt;
  opt.atoms = 5;
  opt.maxRules = 8;
  opt.allowConstraints = true;
  opt.allowDisjunction = true;
  for (int i = 0; i < 300; ++i) {
    std::string src = random_program(rng, opt);
    Vocabulary voc;
    Program prog = load_program(src, voc);
    auto pcs = ground_clauses(prog, voc);
    auto atoms = clause_atoms(pcs, voc);
    auto defs = clause_defaults(pcs, voc);
    auto expected = brute_minimal_models(pcs, atoms, defs, voc);

    std::vector<BruteModel> got;
    try {
      FactStore store = ground_fixpoint(prog, voc);
      auto fcs = fact_clauses(store.contents());
      got = brute_minimal_models(fcs, atoms, defs, voc);
    } catch (const InconsistentProgram&) {
      // no models at all
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (got != expected)
      throw Fail("model mismatch on program #" + std::to_string(i) + ":\n" +
                 src);
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  EXPECT(dt < 60.0, "took " + std::to_string(dt) + "s, budget 60s");
}

std::vector<std::string> criterion8_programs() {
  std::mt19937_64 rng(80008);
  std::vector<std::string> out;
  for (int i = 0; i < 200; ++i) {
    GenOptions opt;
    opt.atoms = 4;
    opt.maxRules = 6;
    opt.forceConstraint = i % 10 < 3;  // 30% with constraints
    opt.forceDisjunction = i % 2 == 0;  // 50% disjunctive
    out.push_back(random_program(rng, opt));
  }
  return out;
}

void criterion8() {
  auto t0 = Clock::now();
  auto programs = criterion8_programs();
  for (size_t i = 0; i < programs.size(); ++i) {
    Vocabulary voc;
    Program prog = load_program(programs[i], voc);
    auto rep = cross_check(prog, voc);
    if (!rep.pass)
      throw Fail("cross check failed on program #" + std::to_string(i) + " (" +
                 rep.detail + "):\n" + programs[i]);
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  EXPECT(dt < 120.0, "took " + std::to_string(dt) + "s, budget 120s");
}

void criterion9() {
  std::mt19937_64 rng(90009);
  GenOptions opt;
  opt.atoms = 6;
  opt.maxRules = 8;
  opt.allowConjunctionNeg = false;
  for (int i = 0; i < 300; ++i) {
    std::string src = random_program(rng, opt);
    Vocabulary voc;
    Program prog = load_program(src, voc);
    auto gcs = ground_clauses(prog, voc);
    auto wfs = wfs_reference(gcs, voc);

    auto atoms = clause_atoms(gcs, voc);
    for (AtomId a : atoms) prog.monitored.push_back(voc.defaults.intern_atoms({a}));
    FactStore store = ground_fixpoint(prog, voc);
    ResidualProgram res = residual(std::move(store), prog.monitored, voc);
    DefixResult fix = compute_defix(res, voc);
    EXPECT(!fix.inconsistent, "normal program with empty fixed point:\n" + src);

    for (AtomId a : atoms) {
      bool wfTrue = std::find(wfs.trueAtoms.begin(), wfs.trueAtoms.end(), a) !=
                    wfs.trueAtoms.end();
      bool wfFalse = std::find(wfs.falseAtoms.begin(), wfs.falseAtoms.end(),
                               a) != wfs.falseAtoms.end();
      bool t = entails_atom(fix, res, a);
      bool f = entails_default(fix, voc.defaults.intern_atoms({a}));
      if (t != wfTrue || f != wfFalse)
        throw Fail("well-founded mismatch on " + voc.atoms.text(a) +
                   " in program #" + std::to_string(i) + ":\n" + src);
    }
  }
}

void criterion10() {
  std::mt19937_64 rng(1000010);
  GenOptions opt;
  opt.atoms = 5;
  opt.maxRules = 6;
  opt.allowDisjunction = true;
  opt.negated = false;
  for (int i = 0; i < 200; ++i) {
    std::string src = random_program(rng, opt);
    Vocabulary voc;
    Program prog = load_program(src, voc);
    auto gcs = ground_clauses(prog, voc);
    auto atoms = clause_atoms(gcs, voc);
    auto minModels = brute_minimal_models(gcs, atoms, {}, voc);

    FactStore store = ground_fixpoint(prog, voc);
    for (uint32_t e = 1; e < (1u << atoms.size()); ++e) {
      std::vector<AtomId> conj;
      uint64_t eMask = 0;
      for (size_t k = 0; k < atoms.size(); ++k)
        if ((e >> k) & 1) {
          conj.push_back(atoms[k]);
          eMask |= uint64_t(1) << k;
        }
      DefAtomId d = voc.defaults.intern_atoms(std::move(conj));
      std::vector<DefAtomId> mon{d};
      FactStore copy = store;
      ResidualProgram res = residual(std::move(copy), mon, voc);
      DefixResult fix = compute_defix(res, voc);
      bool entailed = entails_default(fix, d);
      bool falseEverywhere = true;
      for (const auto& m : minModels)
        if ((m.objBits & eMask) == eMask) falseEverywhere = false;
      if (entailed != falseEverywhere)
        throw Fail("minimal-model mismatch on conjunction mask " +
                   std::to_string(e) + " in program #" + std::to_string(i) +
                   ":\n" + src);
    }
  }
}

void criterion11() {
  std::mt19937_64 rng(1100011);
  for (int i = 0; i < 200; ++i) {
    GenOptions opt;
    opt.atoms = 4;
    opt.maxRules = 6;
    opt.allowDisjunction = rng() % 2 == 0;
    std::string src = random_program(rng, opt);
    Pipeline pl(src);
    if (pl.fix.inconsistent)
      throw Fail("affirmative program with empty fixed point:\n" + src);
  }
}

void criterion12() {
  // naive antichain filter as the reference
  struct Naive {
    std::vector<ConditionalFact> facts;
    static bool subset(const ConditionalFact& a, const ConditionalFact& b) {
      return std::includes(b.head.begin(), b.head.end(), a.head.begin(),
                           a.head.end()) &&
             std::includes(b.cond.begin(), b.cond.end(), a.cond.begin(),
                           a.cond.end());
    }
    void insert(const ConditionalFact& f) {
      for (const auto& g : facts)
        if (subset(g, f)) return;
      facts.erase(std::remove_if(
                      facts.begin(), facts.end(),
                      [&](const ConditionalFact& g) { return subset(f, g); }),
                  facts.end());
      facts.push_back(f);
    }
  };

  Vocabulary voc;
  std::vector<AtomId> atoms;
  for (int i = 0; i < 20; ++i)
    atoms.push_back(voc.atoms.intern("h" + std::to_string(i), {}));
  std::vector<DefAtomId> defs;
  for (int i = 0; i < 10; ++i)
    defs.push_back(voc.defaults.intern_atoms({atoms[i], atoms[i + 10]}));

  // mostly mid-length incomparable facts so the antichain actually grows to
  // the insertion count, with a few short ones to exercise deletion
  std::mt19937_64 rng(1200012);
  std::vector<ConditionalFact> inserts;
  for (int i = 0; i < 10000; ++i) {
    // two or three distinct head atoms plus two distinct condition literals;
    // same-length facts subsume only on equality, so the antichain grows
    std::vector<AtomId> head;
    int hn = 2 + static_cast<int>(rng() % 2);
    while (static_cast<int>(head.size()) < hn) {
      AtomId a = atoms[rng() % atoms.size()];
      if (std::find(head.begin(), head.end(), a) == head.end())
        head.push_back(a);
    }
    std::vector<DefAtomId> cond;
    while (cond.size() < 2) {
      DefAtomId d = defs[rng() % defs.size()];
      if (std::find(cond.begin(), cond.end(), d) == cond.end())
        cond.push_back(d);
    }
    inserts.push_back(make_fact(std::move(head), std::move(cond)));
  }

  FactStore store(&voc.atoms);
  Naive naive;
  for (const auto& f : inserts) {
    store.insert(f);
    naive.insert(f);
  }
  auto xs = store.contents();
  auto ys = naive.facts;
  auto lt = [](const ConditionalFact& x, const ConditionalFact& y) {
    return std::tie(x.head, x.cond) < std::tie(y.head, y.cond);
  };
  std::sort(xs.begin(), xs.end(), lt);
  std::sort(ys.begin(), ys.end(), lt);
  EXPECT(xs == ys, "indexed and naive antichains differ");

  // fresh probe inserts against the grown store measure the per-insert cost
  std::vector<ConditionalFact> probes;
  for (int i = 0; i < 2000; ++i) {
    std::vector<AtomId> head;
    int hn = 2 + static_cast<int>(rng() % 2);
    while (static_cast<int>(head.size()) < hn) {
      AtomId a = atoms[rng() % atoms.size()];
      if (std::find(head.begin(), head.end(), a) == head.end())
        head.push_back(a);
    }
    std::vector<DefAtomId> cond;
    while (cond.size() < 2) {
      DefAtomId d = defs[rng() % defs.size()];
      if (std::find(cond.begin(), cond.end(), d) == cond.end())
        cond.push_back(d);
    }
    probes.push_back(make_fact(std::move(head), std::move(cond)));
  }
  auto t0 = Clock::now();
  for (const auto& f : probes) store.insert(f);
  double indexed = std::chrono::duration<double>(Clock::now() - t0).count();
  t0 = Clock::now();
  for (const auto& f : probes) naive.insert(f);
  double quadratic = std::chrono::duration<double>(Clock::now() - t0).count();

  std::ostringstream note;
  note << "insert speedup " << (indexed > 0 ? quadratic / indexed : 0.0)
       << "x at " << xs.size() << " stored facts";
  std::printf("      (%s)\n", note.str().c_str());
}

void criterion13() {
  auto programs = criterion8_programs();
  for (size_t i = 0; i < programs.size(); ++i) {
    Vocabulary voc;
    Program prog = load_program(programs[i], voc);
    FactStore store(&voc.atoms);
    try {
      store = ground_fixpoint(prog, voc);
    } catch (const InconsistentProgram&) {
      continue;
    }
    FactStore copy = store;

    ResidualProgram unreduced = residual_identity(std::move(copy), {}, voc);
    DefixResult fix1 = compute_defix(unreduced, voc);

    bool reducedInconsistent = false;
    std::set<uint64_t> projected, reducedSet;
    try {
      ResidualProgram reduced = residual(std::move(store), {}, voc);
      DefixResult fix2 = compute_defix(reduced, voc);
      reducedSet.insert(fix2.defix.begin(), fix2.defix.end());
      std::vector<int> pos;
      for (DefAtomId d : reduced.critNeg) {
        auto it = std::find(unreduced.critNeg.begin(), unreduced.critNeg.end(), d);
        if (it == unreduced.critNeg.end())
          throw Fail("reduced critical set is not a subset on program #" +
                     std::to_string(i));
        pos.push_back(static_cast<int>(it - unreduced.critNeg.begin()));
      }
      for (uint64_t m : fix1.defix) {
        uint64_t p = 0;
        for (size_t k = 0; k < pos.size(); ++k)
          if ((m >> pos[k]) & 1) p |= uint64_t(1) << k;
        projected.insert(p);
      }
    } catch (const InconsistentProgram&) {
      reducedInconsistent = true;
    }
    if (reducedInconsistent) {
      if (!fix1.defix.empty())
        throw Fail("reduction reported inconsistency but the unreduced fixed "
                   "point is non-empty on program #" +
                   std::to_string(i) + ":\n" + programs[i]);
      continue;
    }
    if (projected != reducedSet)
      throw Fail("fixed points disagree after reduction on program #" +
                 std::to_string(i) + ":\n" + programs[i]);
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "car program entailments (car, runs, not broken) under 0.1s", criterion1},
      {2, "stratified chain entailments and default-free residual", criterion2},
      {3, "visit program entailments", criterion3},
      {4, "three-valued loop program tables and not p", criterion4},
      {5, "work/sleep program stays consistent, entails paid and not angry", criterion5},
      {6, "positive and negative reduction examples", criterion6},
      {7, "hyperresolution fixed point preserves minimal models (300 programs)", criterion7},
      {8, "implication fixed point agrees with the solver (200 programs)", criterion8},
      {9, "well-founded coincidence on normal programs (300 programs)", criterion9},
      {10, "minimal-model coincidence on positive disjunctive programs (200 programs)", criterion10},
      {11, "affirmative programs keep a consistent fixed point (200 programs)", criterion11},
      {12, "subsumption index matches the naive filter on 10^4 insertions", criterion12},
      {13, "reduction preserves the fixed point on shared default atoms", criterion13},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    std::string detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (detail.empty()) {
      std::printf("[%2d] PASS  %s (%.2fs)\n", c.id, c.name, dt);
    } else {
      ++failures;
      std::printf("[%2d] FAIL  %s (%.2fs)\n      %s\n", c.id, c.name, dt,
                  detail.c_str());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
