#ifndef SLP_SOLVER_HPP
#define SLP_SOLVER_HPP

#include <optional>
#include <span>
#include <vector>

#include "slp/grounder.hpp"
#include "slp/reducer.hpp"

namespace slp {

// Default-atom interpretations surviving the fixed point, as bitmasks over
// critNeg positions (bit i = truth of critNeg[i]); objective interpretations
// are bitmasks over critObj positions.
struct DefixResult {
  std::vector<DefAtomId> critNeg;
  std::vector<AtomId> critObj;
  std::vector<uint64_t> defix;         // sorted ascending
  std::vector<uint64_t> objsetLast;    // objective parts, last iteration
  std::vector<uint64_t> objsetPhase1;  // objective parts over all candidates
  bool inconsistent = false;           // defix empty
  int iterations = 0;
};

// Head disjunctions whose conditions hold under the interpretation, with
// answer-predicate facts skipped; nullopt when a constraint fires (the
// interpretation admits no models).
std::optional<std::vector<std::vector<AtomId>>> evaluate_conditions(
    const ResidualProgram& res, uint64_t defBits);

// Restrictions to critObj of the minimal models of a set of non-empty
// disjunctions. Branches on an undefined critical atom: either false and
// removed everywhere, or true with the remaining atoms of one disjunction
// containing it false.
std::vector<uint64_t> minimal_models(std::vector<std::vector<AtomId>> disjs,
                                     std::span<const AtomId> critObj);

// Objective parts of minimal models over a set of default interpretations.
std::vector<uint64_t> objective_parts(const ResidualProgram& res,
                                      std::span<const uint64_t> defSet);

// Induced default valuation of an objective interpretation: not(E) holds
// iff some atom of E is false.
uint64_t induced_defaults(uint64_t objBits, const ResidualProgram& res,
                          const Vocabulary& voc);

// True iff defBits equals the intersection of the induced valuations of the
// objective interpretations extending it, and at least one exists.
bool possible(uint64_t defBits, std::span<const uint64_t> inducedSet,
              int critNegSize);

DefixResult compute_defix(const ResidualProgram& res, Vocabulary& voc,
                          const Limits& limits = {});

// Entailment in the completion: a default atom must hold in every surviving
// interpretation; an atom or positive clause must hold in every model of
// the evaluated residual, for every surviving interpretation.
bool entails_default(const DefixResult& r, DefAtomId d);
bool entails_atom(const DefixResult& r, const ResidualProgram& res, AtomId a);
bool entails_clause(const DefixResult& r, const ResidualProgram& res,
                    std::span<const AtomId> atoms);

}  // namespace slp

#endif  // SLP_SOLVER_HPP
