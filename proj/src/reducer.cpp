#include "slp/reducer.hpp"

#include <algorithm>
#include <set>

namespace slp {

namespace {

// Facts whose head holds the answer predicate are query bookkeeping; they
// neither count as head occurrences nor get their conditions reduced.
bool reducible(const FactStore& store, FactId id) {
  return store.alive(id) && !store.head_has_answer(store.fact(id));
}

std::vector<AtomId> zero_head_atoms(const FactStore& store, Vocabulary& voc) {
  // Atoms with no head occurrence whose singleton negation occurs in a cond.
  std::set<AtomId> seen;
  std::vector<AtomId> out;
  for (FactId id = 0; id < store.slot_count(); ++id) {
    if (!reducible(store, id)) continue;
    for (DefAtomId d : store.fact(id).cond) {
      auto a = voc.defaults.singleton(d);
      if (a && store.head_count(*a) == 0 && seen.insert(*a).second)
        out.push_back(*a);
    }
  }
  return out;
}

bool remove_cond_literal(FactStore& store, FactId id, DefAtomId d) {
  ConditionalFact f = store.fact(id);
  store.erase(id);
  f.cond.erase(std::remove(f.cond.begin(), f.cond.end(), d), f.cond.end());
  if (store.insert(std::move(f)) == InsertResult::Inconsistent)
    throw InconsistentProgram(
        "positive reduction derived the empty conditional fact (constraint "
        "with an unsatisfiable condition)");
  return true;
}

}  // namespace

bool positive_reduction(FactStore& store, Vocabulary& voc) {
  bool changed = false;
  std::vector<AtomId> queue = zero_head_atoms(store, voc);
  while (!queue.empty()) {
    AtomId p = queue.back();
    queue.pop_back();
    if (store.head_count(p) != 0) continue;
    auto d = voc.defaults.find_singleton(p);
    if (!d) continue;
    // Snapshot: removal re-inserts and mutates the index bucket.
    std::vector<FactId> hits;
    for (FactId id : store.by_cond(*d))
      if (reducible(store, id)) hits.push_back(id);
    for (FactId id : hits) {
      if (!store.alive(id)) continue;
      remove_cond_literal(store, id, *d);
      changed = true;
    }
    // Deleting subsumed facts may zero further head counts.
    for (AtomId a : zero_head_atoms(store, voc))
      if (std::find(queue.begin(), queue.end(), a) == queue.end())
        queue.push_back(a);
  }
  return changed;
}

bool negative_reduction(FactStore& store, Vocabulary& voc) {
  bool changed = false;
  bool progress = true;
  while (progress) {
    progress = false;
    for (FactId uid : store.unconditional_facts()) {
      if (!store.alive(uid)) continue;
      const auto& head = store.fact(uid).head;
      if (head.empty()) continue;
      // All head atoms as singleton negations; absent singletons mean no
      // condition can contain them all.
      std::vector<DefAtomId> negs;
      bool all = true;
      for (AtomId a : head) {
        auto d = voc.defaults.find_singleton(a);
        if (!d) {
          all = false;
          break;
        }
        negs.push_back(*d);
      }
      if (!all) continue;
      std::vector<FactId> victims;
      for (FactId id : store.by_cond(negs[0])) {
        if (!store.alive(id) || id == uid) continue;
        const auto& cond = store.fact(id).cond;
        bool superset = true;
        for (DefAtomId d : negs)
          if (!std::binary_search(cond.begin(), cond.end(), d)) {
            superset = false;
            break;
          }
        if (superset) victims.push_back(id);
      }
      for (FactId id : victims) {
        store.erase(id);
        changed = progress = true;
      }
    }
  }
  return changed;
}

namespace {

void critical_sets(ResidualProgram& r, std::span<const DefAtomId> monitored,
                   Vocabulary& voc) {
  std::set<DefAtomId> crit;
  for (FactId id = 0; id < r.store.slot_count(); ++id) {
    if (!r.store.alive(id)) continue;
    for (DefAtomId d : r.store.fact(id).cond) crit.insert(d);
  }
  for (DefAtomId d : monitored) crit.insert(d);
  r.critNeg.assign(crit.begin(), crit.end());
  voc.defaults.canonical_sort(r.critNeg, voc.atoms);
  std::set<AtomId> obj;
  for (DefAtomId d : r.critNeg)
    for (AtomId a : voc.defaults.def(d).body) obj.insert(a);
  r.critObj.assign(obj.begin(), obj.end());
  voc.atoms.canonical_sort(r.critObj);
}

}  // namespace

ResidualProgram residual(FactStore store, std::span<const DefAtomId> monitored,
                         Vocabulary& voc) {
  bool changed = true;
  while (changed) {
    changed = positive_reduction(store, voc);
    changed |= negative_reduction(store, voc);
  }
  ResidualProgram r(std::move(store));
  critical_sets(r, monitored, voc);
  return r;
}

ResidualProgram residual_identity(FactStore store,
                                  std::span<const DefAtomId> monitored,
                                  Vocabulary& voc) {
  ResidualProgram r(std::move(store));
  critical_sets(r, monitored, voc);
  return r;
}

void reduce_randomized(FactStore& store, Vocabulary& voc,
                       std::mt19937_64& rng) {
  struct Step {
    bool positive;
    FactId fact;
    DefAtomId lit;  // positive: literal to drop
  };
  for (;;) {
    std::vector<Step> steps;
    for (FactId id = 0; id < store.slot_count(); ++id) {
      if (!reducible(store, id)) continue;
      for (DefAtomId d : store.fact(id).cond) {
        auto a = voc.defaults.singleton(d);
        if (a && store.head_count(*a) == 0)
          steps.push_back(Step{true, id, d});
      }
    }
    for (FactId uid : store.unconditional_facts()) {
      const auto& head = store.fact(uid).head;
      if (head.empty()) continue;
      std::vector<DefAtomId> negs;
      bool all = true;
      for (AtomId a : head) {
        auto d = voc.defaults.find_singleton(a);
        if (!d) {
          all = false;
          break;
        }
        negs.push_back(*d);
      }
      if (!all) continue;
      for (FactId id = 0; id < store.slot_count(); ++id) {
        if (!store.alive(id) || id == uid) continue;
        const auto& cond = store.fact(id).cond;
        bool superset = !negs.empty();
        for (DefAtomId d : negs)
          if (!std::binary_search(cond.begin(), cond.end(), d)) superset = false;
        if (superset) steps.push_back(Step{false, id, 0});
      }
    }
    if (steps.empty()) return;
    const Step& s = steps[rng() % steps.size()];
    if (s.positive) {
      remove_cond_literal(store, s.fact, s.lit);
    } else {
      store.erase(s.fact);
    }
  }
}

}  // namespace slp
