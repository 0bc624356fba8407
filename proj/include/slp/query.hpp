#ifndef SLP_QUERY_HPP
#define SLP_QUERY_HPP

#include <string>
#include <vector>

#include "slp/program.hpp"
#include "slp/solver.hpp"

namespace slp {

struct AnswerSet {
  // Ground answer tuples whose condition holds in every surviving
  // interpretation; sorted. A ground query answers yes iff the single empty
  // tuple is present.
  std::vector<std::vector<SymId>> definite;
  // Disjunctive answers (heads with several answer atoms), each a sorted
  // set of tuples; only reported on request.
  std::vector<std::vector<std::vector<SymId>>> possible;
  bool inconsistentCompletion = false;
};

// Turns a query into a rule deriving the reserved answer predicate over the
// query variables in first-occurrence order.
SuperClause rewrite(const Query& q, Vocabulary& voc);

// Runs the pipeline with the rewritten rule added and the query's ground
// default atoms monitored, then evaluates the answer facts against the
// surviving interpretations.
AnswerSet answer(const Program& prog, const Query& q, Vocabulary& voc,
                 const Limits& limits = {});

}  // namespace slp

#endif  // SLP_QUERY_HPP
