#ifndef SLP_REDUCER_HPP
#define SLP_REDUCER_HPP

#include <random>
#include <span>

#include "slp/fact_store.hpp"

namespace slp {

// Fact set closed under positive and negative reduction, together with the
// critical default atoms (those occurring in the facts plus the monitored
// ones) and the critical objective atoms inside them.
struct ResidualProgram {
  FactStore store;
  std::vector<DefAtomId> critNeg;  // canonical order
  std::vector<AtomId> critObj;     // canonical order

  ResidualProgram(FactStore s) : store(std::move(s)) {}
};

// Removes singleton condition literals `not p` where p occurs in no head.
// Returns true if anything changed; throws InconsistentProgram when the
// empty fact is derived.
bool positive_reduction(FactStore& store, Vocabulary& voc);

// Deletes facts whose condition contains `not p1, ..., not pk` for some
// unconditional fact p1 | ... | pk. Returns true if anything changed.
bool negative_reduction(FactStore& store, Vocabulary& voc);

// Alternates the two reductions to closure and computes the critical sets.
ResidualProgram residual(FactStore store, std::span<const DefAtomId> monitored,
                         Vocabulary& voc);

// Critical sets without reducing (for before/after comparisons).
ResidualProgram residual_identity(FactStore store,
                                  std::span<const DefAtomId> monitored,
                                  Vocabulary& voc);

// Applies single reduction steps in random order until closure; used to
// check that the residual program does not depend on the application order.
void reduce_randomized(FactStore& store, Vocabulary& voc, std::mt19937_64& rng);

}  // namespace slp

#endif  // SLP_REDUCER_HPP
