#ifndef SLP_GROUNDER_HPP
#define SLP_GROUNDER_HPP

#include <vector>

#include "slp/fact_store.hpp"
#include "slp/program.hpp"

namespace slp {

struct Limits {
  int maxCritNeg = 24;
  size_t maxFacts = 1'000'000;
};

// Derives the set of minimal conditional facts of a range-restricted clausal
// program by iterating the hyperresolution operator. Body atoms are joined
// left to right against the head-literal index; each round requires at least
// one body atom to be matched against a fact derived in the previous round.
class Grounder {
 public:
  Grounder(const Program& prog, Vocabulary& voc, const Limits& limits);

  // Runs one round; returns false once no new facts were inserted.
  bool step();
  void run();

  FactStore& store() { return store_; }
  const FactStore& store() const { return store_; }

  // Hyperresolvents of one round, without inserting them. Facts with seq in
  // [deltaLo, deltaHi) play the role of the last round's new facts.
  std::vector<ConditionalFact> round_candidates(uint64_t deltaLo,
                                                uint64_t deltaHi) const;

 private:
  struct Candidate {
    ConditionalFact fact;
    const SuperClause* rule;
  };
  std::vector<Candidate> candidates(uint64_t deltaLo, uint64_t deltaHi) const;
  void seed();

  const Program& prog_;
  Vocabulary& voc_;
  Limits limits_;
  FactStore store_;
  std::vector<const SuperClause*> rules_;  // clauses with positive bodies
  uint64_t deltaLo_ = 0, deltaHi_ = 0;
  bool seeded_ = false;
};

// Full fixpoint; throws InconsistentProgram or GuardError.
FactStore ground_fixpoint(const Program& prog, Vocabulary& voc,
                          const Limits& limits = {});

}  // namespace slp

#endif  // SLP_GROUNDER_HPP
