#ifndef SLP_ORACLE_HPP
#define SLP_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "slp/program.hpp"
#include "slp/solver.hpp"

// Independent desk-scale reference engines: exhaustive reduced-model
// enumeration, the implication fixed point over default atoms, and a
// well-founded model computation for normal programs. Everything here is
// deliberately brute force and guarded by input-size checks.

namespace slp {

struct GroundClause {
  std::vector<AtomId> head;
  std::vector<AtomId> pos;
  std::vector<DefAtomId> neg;
};

// Requires a variable-free program.
std::vector<GroundClause> ground_clauses(const Program& p, Vocabulary& voc);
std::vector<GroundClause> fact_clauses(const std::vector<ConditionalFact>& fs);

// Atoms and default atoms occurring in the clauses, canonically sorted.
std::vector<AtomId> clause_atoms(std::span<const GroundClause> cs,
                                 const Vocabulary& voc);
std::vector<DefAtomId> clause_defaults(std::span<const GroundClause> cs,
                                       const Vocabulary& voc);

struct BruteModel {
  uint64_t defBits;  // over the given default atom list
  uint64_t objBits;  // over the given atom list
  bool operator==(const BruteModel& o) const {
    return defBits == o.defBits && objBits == o.objBits;
  }
  bool operator<(const BruteModel& o) const {
    return defBits != o.defBits ? defBits < o.defBits : objBits < o.objBits;
  }
};

// All reduced models (default atoms valued freely, not(true) pinned false)
// minimal in their objective part. Enumerates 2^(#defAtoms + #atoms)
// interpretations; callers keep the lists small.
std::vector<BruteModel> brute_minimal_models(
    std::span<const GroundClause> clauses, std::span<const AtomId> atoms,
    std::span<const DefAtomId> defAtoms, const Vocabulary& voc);

// Fixed point of the implication closure over conjunctions of program
// atoms, represented semantically by its surviving default-atom classes.
// Conjunction subsets are encoded as atom masks; the default valuation bit
// for a non-empty mask e lives at position e-1.
class SyntacticFixpoint {
 public:
  static constexpr int kMaxAtoms = 4;

  SyntacticFixpoint(std::span<const GroundClause> clauses,
                    std::vector<AtomId> atoms, const Vocabulary& voc);

  const std::vector<AtomId>& atoms() const { return atoms_; }
  int iterations() const { return iterations_; }
  bool consistent() const;
  bool entails_not(uint32_t eMask) const;
  bool entails_implication(std::span<const uint32_t> antecedents,
                           uint32_t consequent) const;
  // Surviving default valuations, ascending.
  std::vector<uint32_t> default_parts() const;

 private:
  std::vector<AtomId> atoms_;
  int k_;
  int deltaBits_;
  std::vector<uint16_t> modelsByDelta_;  // objective model sets per class
  std::vector<uint16_t> minObjByDelta_;  // minimal objective parts per class
  std::vector<char> surv_;
  int iterations_ = 0;
};

SyntacticFixpoint syntactic_fixpoint(std::span<const GroundClause> clauses,
                                     const Vocabulary& voc);

struct WfsModel {
  std::vector<AtomId> trueAtoms;
  std::vector<AtomId> falseAtoms;
  std::vector<AtomId> undefined;
};

// Alternating fixed point over the reduct operator; input must be normal
// (single-atom heads, singleton default atoms).
WfsModel wfs_reference(std::span<const GroundClause> clauses,
                       const Vocabulary& voc);

struct CrossCheckReport {
  bool pass = true;
  std::string detail;  // first counterexample
};

// Runs both engines on a variable-free program (at most 4 atoms) and
// compares entailed default atoms, implication closure, and the surviving
// default valuations.
CrossCheckReport cross_check(const Program& prog, Vocabulary& voc,
                             const Limits& limits = {});

}  // namespace slp

#endif  // SLP_ORACLE_HPP
