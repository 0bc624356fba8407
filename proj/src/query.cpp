#include "slp/query.hpp"

#include <algorithm>
#include <set>

#include "slp/clausal.hpp"

namespace slp {

SuperClause rewrite(const Query& q, Vocabulary& voc) {
  SuperClause cl;
  cl.varNames = q.varNames;
  // Answer arguments: query variables in first-occurrence order.
  std::set<uint32_t> seen;
  PatAtom answer{voc.symbols.intern(kAnswerPred), {}};
  for (const auto& lit : q.body)
    for (const auto& a : lit.atoms)
      for (const Term& t : a.args)
        if (t.is_var() && seen.insert(t.var()).second)
          answer.args.push_back(t);
  cl.head.push_back(std::move(answer));
  for (const auto& lit : q.body) {
    if (lit.negated) {
      cl.negBody.push_back(lit.atoms);
    } else {
      cl.posBody.push_back(lit.atoms[0]);
    }
  }
  check_range_restriction(cl);
  return cl;
}

AnswerSet answer(const Program& prog, const Query& q, Vocabulary& voc,
                 const Limits& limits) {
  AnswerSet out;

  Program run = prog;
  run.queries.clear();
  bool dead = false;  // a not(true) literal can never hold
  for (const auto& lit : q.body)
    if (lit.negated && lit.atoms.empty()) dead = true;
  if (!dead) run.clauses.push_back(rewrite(q, voc));

  // Ground default atoms of the query join the monitored set.
  for (const auto& lit : q.body) {
    if (!lit.negated) continue;
    bool ground = true;
    for (const auto& a : lit.atoms)
      for (const Term& t : a.args)
        if (t.is_var()) ground = false;
    if (!ground) continue;
    std::vector<AtomId> atoms;
    for (const auto& a : lit.atoms) {
      std::vector<SymId> args;
      for (const Term& t : a.args) args.push_back(t.sym());
      atoms.push_back(voc.atoms.intern(a.pred, std::move(args)));
    }
    DefAtomId d = voc.defaults.intern_atoms(std::move(atoms));
    if (std::find(run.monitored.begin(), run.monitored.end(), d) ==
        run.monitored.end())
      run.monitored.push_back(d);
  }

  FactStore store = ground_fixpoint(run, voc, limits);
  ResidualProgram res = residual(std::move(store), run.monitored, voc);
  DefixResult fix = compute_defix(res, voc, limits);
  if (fix.inconsistent) {
    out.inconsistentCompletion = true;
    return out;
  }

  auto cond_everywhere = [&](const ConditionalFact& f) {
    for (uint64_t defBits : fix.defix) {
      for (DefAtomId d : f.cond) {
        int pos = -1;
        for (size_t i = 0; i < res.critNeg.size(); ++i)
          if (res.critNeg[i] == d) pos = static_cast<int>(i);
        if (pos < 0 || !((defBits >> pos) & 1)) return false;
      }
    }
    return true;
  };

  std::set<std::vector<SymId>> definite;
  std::set<std::vector<std::vector<SymId>>> possible;
  for (FactId id = 0; id < res.store.slot_count(); ++id) {
    if (!res.store.alive(id)) continue;
    const ConditionalFact& f = res.store.fact(id);
    if (f.head.empty() || !res.store.head_has_answer(f)) continue;
    bool allAnswer = true;
    for (AtomId a : f.head)
      if (!voc.atoms.is_answer(a)) allAnswer = false;
    if (!allAnswer) continue;
    if (!cond_everywhere(f)) continue;
    if (f.head.size() == 1) {
      definite.insert(voc.atoms.atom(f.head[0]).args);
    } else {
      std::vector<std::vector<SymId>> tuple;
      for (AtomId a : f.head) tuple.push_back(voc.atoms.atom(a).args);
      std::sort(tuple.begin(), tuple.end());
      possible.insert(std::move(tuple));
    }
  }
  auto tuple_less = [&](const std::vector<SymId>& a,
                        const std::vector<SymId>& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      const std::string& x = voc.symbols.text(a[i]);
      const std::string& y = voc.symbols.text(b[i]);
      if (x != y) return x < y;
    }
    return a.size() < b.size();
  };
  out.definite.assign(definite.begin(), definite.end());
  std::sort(out.definite.begin(), out.definite.end(), tuple_less);
  out.possible.assign(possible.begin(), possible.end());
  return out;
}

}  // namespace slp
