#include "slp/solver.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace slp {

namespace {

int critneg_pos(const ResidualProgram& res, DefAtomId d) {
  for (size_t i = 0; i < res.critNeg.size(); ++i)
    if (res.critNeg[i] == d) return static_cast<int>(i);
  return -1;
}

// Per-fact condition bitmask over critNeg positions.
struct CompiledFacts {
  struct Entry {
    uint64_t condMask;
    const ConditionalFact* fact;
    bool answerHead;
  };
  std::vector<Entry> entries;
  uint64_t relevantMask = 0;  // cond bits occurring anywhere

  CompiledFacts(const ResidualProgram& res) {
    for (FactId id = 0; id < res.store.slot_count(); ++id) {
      if (!res.store.alive(id)) continue;
      const ConditionalFact& f = res.store.fact(id);
      uint64_t mask = 0;
      for (DefAtomId d : f.cond) {
        int pos = critneg_pos(res, d);
        if (pos < 0)
          throw ContractError("condition literal outside the critical set");
        mask |= uint64_t(1) << pos;
      }
      entries.push_back(Entry{mask, &f, res.store.head_has_answer(f)});
      relevantMask |= mask;
    }
  }
};

struct ModelGen {
  std::span<const AtomId> critObj;
  std::unordered_map<AtomId, int> pos;
  std::unordered_set<uint64_t> out;

  explicit ModelGen(std::span<const AtomId> crit) : critObj(crit) {
    for (size_t i = 0; i < crit.size(); ++i)
      pos.emplace(crit[i], static_cast<int>(i));
  }

  static void drop_nonminimal(std::vector<std::vector<AtomId>>& D) {
    std::sort(D.begin(), D.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<std::vector<AtomId>> keep;
    for (auto& d : D) {
      bool redundant = false;
      for (const auto& k : keep)
        if (std::includes(d.begin(), d.end(), k.begin(), k.end())) {
          redundant = true;
          break;
        }
      if (!redundant) keep.push_back(std::move(d));
    }
    D = std::move(keep);
  }

  // Returns the number of models emitted. Both branch kinds extend to a
  // minimal model, so a branch that emits nothing indicates a bug.
  int rec(std::vector<std::vector<AtomId>> D, uint64_t defined,
          uint64_t value) {
    size_t idx = 0;
    while (idx < critObj.size() && ((defined >> idx) & 1)) ++idx;
    if (idx == critObj.size()) {
      out.insert(value);
      return 1;
    }
    drop_nonminimal(D);
    AtomId p = critObj[idx];
    uint64_t bit = uint64_t(1) << idx;

    bool occurs = false, unit = false;
    for (const auto& d : D) {
      if (std::binary_search(d.begin(), d.end(), p)) {
        occurs = true;
        if (d.size() == 1) unit = true;
      }
    }
    if (!occurs) return rec(std::move(D), defined | bit, value);
    if (unit) return rec(std::move(D), defined | bit, value | bit);

    int emitted = 0;
    {
      // p false: remove it from every disjunction.
      std::vector<std::vector<AtomId>> D2 = D;
      for (auto& d : D2)
        d.erase(std::remove(d.begin(), d.end(), p), d.end());
      emitted += rec(std::move(D2), defined | bit, value);
    }
    for (const auto& reason : D) {
      if (!std::binary_search(reason.begin(), reason.end(), p)) continue;
      // p true because all other atoms of this disjunction are false.
      std::vector<AtomId> others;
      for (AtomId q : reason)
        if (q != p) others.push_back(q);
      std::vector<std::vector<AtomId>> D2;
      for (const auto& d : D) {
        std::vector<AtomId> nd;
        for (AtomId q : d)
          if (!std::binary_search(others.begin(), others.end(), q))
            nd.push_back(q);
        D2.push_back(std::move(nd));
      }
      D2.push_back({p});
      uint64_t def2 = defined | bit;
      for (AtomId q : others) {
        auto it = pos.find(q);
        if (it != pos.end()) def2 |= uint64_t(1) << it->second;
      }
      emitted += rec(std::move(D2), def2, value | bit);
    }
    if (emitted == 0)
      throw ContractError("minimal model generation reached a dead end");
    return emitted;
  }
};

std::optional<std::vector<std::vector<AtomId>>> conditions_of(
    const CompiledFacts& cf, uint64_t defBits) {
  std::vector<std::vector<AtomId>> D;
  for (const auto& e : cf.entries) {
    if ((defBits & e.condMask) != e.condMask) continue;
    if (e.fact->head.empty()) return std::nullopt;  // constraint fires
    if (e.answerHead) continue;
    D.push_back(e.fact->head);
  }
  return D;
}

// Evaluation cache: D and its minimal models depend only on the condition
// bits that occur in the facts.
struct OmegaCache {
  const CompiledFacts& cf;
  std::span<const AtomId> critObj;
  std::unordered_map<uint64_t, std::optional<std::vector<uint64_t>>> memo;

  const std::optional<std::vector<uint64_t>>& models(uint64_t defBits) {
    uint64_t key = defBits & cf.relevantMask;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto D = conditions_of(cf, key);
    std::optional<std::vector<uint64_t>> entry;
    if (D) {
      ModelGen gen(critObj);
      gen.rec(std::move(*D), 0, 0);
      entry = std::vector<uint64_t>(gen.out.begin(), gen.out.end());
      std::sort(entry->begin(), entry->end());
    }
    return memo.emplace(key, std::move(entry)).first->second;
  }
};

uint64_t induced_bits(uint64_t objBits,
                      std::span<const uint64_t> critNegObjMasks) {
  uint64_t r = 0;
  for (size_t k = 0; k < critNegObjMasks.size(); ++k)
    if ((objBits & critNegObjMasks[k]) != critNegObjMasks[k])
      r |= uint64_t(1) << k;
  return r;
}

std::vector<uint64_t> critneg_obj_masks(const ResidualProgram& res,
                                        const Vocabulary& voc) {
  std::unordered_map<AtomId, int> objPos;
  for (size_t i = 0; i < res.critObj.size(); ++i)
    objPos.emplace(res.critObj[i], static_cast<int>(i));
  std::vector<uint64_t> masks;
  for (DefAtomId d : res.critNeg) {
    uint64_t m = 0;
    for (AtomId a : voc.defaults.def(d).body) m |= uint64_t(1) << objPos.at(a);
    masks.push_back(m);
  }
  return masks;
}

}  // namespace

std::optional<std::vector<std::vector<AtomId>>> evaluate_conditions(
    const ResidualProgram& res, uint64_t defBits) {
  CompiledFacts cf(res);
  return conditions_of(cf, defBits);
}

std::vector<uint64_t> minimal_models(std::vector<std::vector<AtomId>> disjs,
                                     std::span<const AtomId> critObj) {
  ModelGen gen(critObj);
  gen.rec(std::move(disjs), 0, 0);
  std::vector<uint64_t> out(gen.out.begin(), gen.out.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> objective_parts(const ResidualProgram& res,
                                      std::span<const uint64_t> defSet) {
  CompiledFacts cf(res);
  OmegaCache cache{cf, res.critObj, {}};
  std::unordered_set<uint64_t> acc;
  for (uint64_t defBits : defSet) {
    const auto& ms = cache.models(defBits);
    if (ms) acc.insert(ms->begin(), ms->end());
  }
  std::vector<uint64_t> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t induced_defaults(uint64_t objBits, const ResidualProgram& res,
                          const Vocabulary& voc) {
  return induced_bits(objBits, critneg_obj_masks(res, voc));
}

bool possible(uint64_t defBits, std::span<const uint64_t> inducedSet,
              int critNegSize) {
  uint64_t cap = critNegSize >= 64 ? ~uint64_t(0)
                                   : ((uint64_t(1) << critNegSize) - 1);
  uint64_t inter = cap;
  bool nonEmpty = false;
  for (uint64_t ind : inducedSet) {
    if ((defBits & ~ind) == 0) {
      inter &= ind;
      nonEmpty = true;
    }
  }
  return nonEmpty && inter == defBits;
}

DefixResult compute_defix(const ResidualProgram& res, Vocabulary& voc,
                          const Limits& limits) {
  DefixResult r;
  r.critNeg = res.critNeg;
  r.critObj = res.critObj;
  int n = static_cast<int>(res.critNeg.size());
  if (n > limits.maxCritNeg)
    throw GuardError("critical default atom limit exceeded: " +
                     std::to_string(n) + " > " +
                     std::to_string(limits.maxCritNeg));
  if (res.critObj.size() > 64)
    throw GuardError("critical objective atom limit exceeded: " +
                     std::to_string(res.critObj.size()) + " > 64");

  CompiledFacts cf(res);
  OmegaCache cache{cf, res.critObj, {}};
  auto masks = critneg_obj_masks(res, voc);

  // not(true) is false in every admissible interpretation.
  uint64_t pinned = 0;
  for (int i = 0; i < n; ++i)
    if (voc.defaults.is_false_literal(res.critNeg[i]))
      pinned |= uint64_t(1) << i;

  const uint64_t total = uint64_t(1) << n;

  // First pass: objective parts over all candidate interpretations,
  // skipping the ones whose conditions fire a constraint.
  std::unordered_set<uint64_t> objAcc;
  for (uint64_t defBits = 0; defBits < total; ++defBits) {
    if (defBits & pinned) continue;
    const auto& ms = cache.models(defBits);
    if (ms) objAcc.insert(ms->begin(), ms->end());
  }
  std::vector<uint64_t> objSet(objAcc.begin(), objAcc.end());
  std::sort(objSet.begin(), objSet.end());
  r.objsetPhase1 = objSet;

  std::vector<uint64_t> induced;
  auto recompute_induced = [&]() {
    induced.clear();
    induced.reserve(objSet.size());
    for (uint64_t o : objSet) induced.push_back(induced_bits(o, masks));
  };
  recompute_induced();

  // Candidates are materialized only after this first filtering step.
  std::vector<uint64_t> defSet;
  for (uint64_t defBits = 0; defBits < total; ++defBits) {
    if (defBits & pinned) continue;
    if (!cache.models(defBits)) continue;  // constraint fires
    if (possible(defBits, induced, n)) defSet.push_back(defBits);
  }

  bool changed = true;
  int iterations = 0;
  size_t prevSize = defSet.size();
  while (changed) {
    changed = false;
    ++iterations;
    if (iterations > static_cast<int>(total) + 1)
      throw ContractError("fixpoint iteration failed to terminate");
    std::unordered_set<uint64_t> acc;
    for (uint64_t defBits : defSet) {
      const auto& ms = cache.models(defBits);
      acc.insert(ms->begin(), ms->end());
    }
    objSet.assign(acc.begin(), acc.end());
    std::sort(objSet.begin(), objSet.end());
    recompute_induced();
    std::vector<uint64_t> next;
    for (uint64_t defBits : defSet)
      if (possible(defBits, induced, n)) next.push_back(defBits);
    if (next.size() != defSet.size()) changed = true;
    if (next.size() > prevSize)
      throw ContractError("fixpoint iteration not decreasing");
    prevSize = next.size();
    defSet = std::move(next);
  }

  r.defix = std::move(defSet);
  r.objsetLast = std::move(objSet);
  r.iterations = iterations;
  r.inconsistent = r.defix.empty();
  return r;
}

bool entails_default(const DefixResult& r, DefAtomId d) {
  int pos = -1;
  for (size_t i = 0; i < r.critNeg.size(); ++i)
    if (r.critNeg[i] == d) pos = static_cast<int>(i);
  if (pos < 0)
    throw ContractError("queried default atom is not monitored");
  if (r.inconsistent) return true;
  for (uint64_t defBits : r.defix)
    if (!((defBits >> pos) & 1)) return false;
  return true;
}

namespace {

// D entails a positive clause iff some evaluated head is a subset of it.
bool defI_entails_clause(const ResidualProgram& res, uint64_t defBits,
                         std::span<const AtomId> atoms) {
  for (FactId id = 0; id < res.store.slot_count(); ++id) {
    if (!res.store.alive(id)) continue;
    const ConditionalFact& f = res.store.fact(id);
    if (res.store.head_has_answer(f)) continue;
    bool condHolds = true;
    for (DefAtomId d : f.cond) {
      int pos = -1;
      for (size_t i = 0; i < res.critNeg.size(); ++i)
        if (res.critNeg[i] == d) pos = static_cast<int>(i);
      if (pos < 0 || !((defBits >> pos) & 1)) {
        condHolds = false;
        break;
      }
    }
    if (!condHolds) continue;
    bool subset = true;
    for (AtomId a : f.head)
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) {
        subset = false;
        break;
      }
    if (subset) return true;
  }
  return false;
}

}  // namespace

bool entails_atom(const DefixResult& r, const ResidualProgram& res, AtomId a) {
  AtomId single[1] = {a};
  return entails_clause(r, res, single);
}

bool entails_clause(const DefixResult& r, const ResidualProgram& res,
                    std::span<const AtomId> atoms) {
  if (r.inconsistent) return true;
  for (uint64_t defBits : r.defix)
    if (!defI_entails_clause(res, defBits, atoms)) return false;
  return true;
}

}  // namespace slp
