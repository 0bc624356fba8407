#include "slp/grounder.hpp"

#include <algorithm>
#include <optional>

namespace slp {

namespace {

using Subst = std::vector<std::optional<SymId>>;

bool match_atom(const PatAtom& pat, const GroundAtom& g, Subst& subst,
                std::vector<uint32_t>& bound) {
  if (pat.pred != g.pred || pat.args.size() != g.args.size()) return false;
  size_t preBound = bound.size();
  for (size_t i = 0; i < pat.args.size(); ++i) {
    const Term& t = pat.args[i];
    if (!t.is_var()) {
      if (t.sym() != g.args[i]) goto undo;
      continue;
    }
    if (subst[t.var()]) {
      if (*subst[t.var()] != g.args[i]) goto undo;
    } else {
      subst[t.var()] = g.args[i];
      bound.push_back(t.var());
    }
  }
  return true;
undo:
  while (bound.size() > preBound) {
    subst[bound.back()].reset();
    bound.pop_back();
  }
  return false;
}

AtomId instantiate(const PatAtom& pat, const Subst& subst, AtomTable& atoms) {
  std::vector<SymId> args;
  args.reserve(pat.args.size());
  for (const Term& t : pat.args)
    args.push_back(t.is_var() ? *subst[t.var()] : t.sym());
  return atoms.intern(pat.pred, std::move(args));
}

}  // namespace

Grounder::Grounder(const Program& prog, Vocabulary& voc, const Limits& limits)
    : prog_(prog), voc_(voc), limits_(limits),
      store_(&voc.atoms, voc.atoms.answer_pred()) {
  for (const auto& cl : prog.clauses)
    if (!cl.posBody.empty()) rules_.push_back(&cl);
}

void Grounder::seed() {
  // Clauses without positive body are already conditional facts; they fire
  // exactly once and never rematch.
  for (const auto& cl : prog_.clauses) {
    if (!cl.posBody.empty()) continue;
    Subst subst;  // range restriction: no variables
    std::vector<AtomId> head;
    for (const auto& a : cl.head) head.push_back(instantiate(a, subst, voc_.atoms));
    std::vector<DefAtomId> cond;
    for (const auto& conj : cl.negBody) {
      std::vector<AtomId> atoms;
      for (const auto& a : conj) atoms.push_back(instantiate(a, subst, voc_.atoms));
      cond.push_back(voc_.defaults.intern_atoms(std::move(atoms)));
    }
    if (store_.insert(make_fact(std::move(head), std::move(cond))) ==
        InsertResult::Inconsistent)
      throw InconsistentProgram("unconditional empty clause: " +
                                clause_text(cl, voc_));
  }
  seeded_ = true;
}

std::vector<ConditionalFact> Grounder::round_candidates(uint64_t deltaLo,
                                                        uint64_t deltaHi) const {
  std::vector<ConditionalFact> out;
  for (auto& c : candidates(deltaLo, deltaHi)) out.push_back(std::move(c.fact));
  return out;
}

std::vector<Grounder::Candidate> Grounder::candidates(uint64_t deltaLo,
                                                      uint64_t deltaHi) const {
  std::vector<Candidate> out;

  for (const SuperClause* rule : rules_) {
    const size_t m = rule->posBody.size();
    Subst subst(rule->varNames.size());
    std::vector<uint32_t> bound;
    // chosen[i]: fact and the head atom consumed at body position i
    std::vector<std::pair<FactId, AtomId>> chosen(m);

    // Position `deltaPos` draws from the last round's facts, earlier
    // positions from older facts, later ones from both.
    for (size_t deltaPos = 0; deltaPos < m; ++deltaPos) {
      auto rec = [&](auto&& self, size_t i) -> void {
        if (i == m) {
          std::vector<AtomId> head;
          for (const auto& a : rule->head)
            head.push_back(instantiate(a, subst, voc_.atoms));
          for (size_t j = 0; j < m; ++j) {
            const ConditionalFact& f = store_.fact(chosen[j].first);
            for (AtomId a : f.head)
              if (a != chosen[j].second) head.push_back(a);
          }
          std::vector<DefAtomId> cond;
          for (const auto& conj : rule->negBody) {
            std::vector<AtomId> atoms;
            for (const auto& a : conj)
              atoms.push_back(instantiate(a, subst, voc_.atoms));
            cond.push_back(voc_.defaults.intern_atoms(std::move(atoms)));
          }
          for (size_t j = 0; j < m; ++j) {
            const ConditionalFact& f = store_.fact(chosen[j].first);
            cond.insert(cond.end(), f.cond.begin(), f.cond.end());
          }
          out.push_back(
              Candidate{make_fact(std::move(head), std::move(cond)), rule});
          return;
        }
        const PatAtom& pat = rule->posBody[i];
        for (FactId id : store_.by_pred(pat.pred)) {
          if (!store_.alive(id)) continue;
          uint64_t seq = store_.seq(id);
          if (i < deltaPos && seq >= deltaLo) continue;
          if (i == deltaPos && (seq < deltaLo || seq >= deltaHi)) continue;
          if (i > deltaPos && seq >= deltaHi) continue;
          for (AtomId ha : store_.fact(id).head) {
            size_t preBound = bound.size();
            if (!match_atom(pat, voc_.atoms.atom(ha), subst, bound)) continue;
            chosen[i] = {id, ha};
            self(self, i + 1);
            while (bound.size() > preBound) {
              subst[bound.back()].reset();
              bound.pop_back();
            }
          }
        }
      };
      rec(rec, 0);
    }
  }
  return out;
}

bool Grounder::step() {
  if (!seeded_) {
    uint64_t lo = store_.next_seq();
    seed();
    deltaLo_ = lo;
    deltaHi_ = store_.next_seq();
    return deltaHi_ > deltaLo_;
  }
  auto cand = candidates(deltaLo_, deltaHi_);
  uint64_t lo = store_.next_seq();
  for (auto& c : cand) {
    if (store_.insert(std::move(c.fact)) == InsertResult::Inconsistent)
      throw InconsistentProgram("constraint fired unconditionally: " +
                                clause_text(*c.rule, voc_));
    if (store_.alive_count() > limits_.maxFacts)
      throw GuardError("conditional fact limit exceeded (" +
                       std::to_string(limits_.maxFacts) + ")");
  }
  deltaLo_ = lo;
  deltaHi_ = store_.next_seq();
  return deltaHi_ > deltaLo_;
}

void Grounder::run() {
  while (step()) {
  }
}

FactStore ground_fixpoint(const Program& prog, Vocabulary& voc,
                          const Limits& limits) {
  Grounder g(prog, voc, limits);
  g.run();
  return std::move(g.store());
}

}  // namespace slp
