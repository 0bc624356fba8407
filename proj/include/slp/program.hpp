#ifndef SLP_PROGRAM_HPP
#define SLP_PROGRAM_HPP

#include <optional>
#include <string>
#include <vector>

#include "slp/core.hpp"

namespace slp {

// Term in a rule: a constant symbol or a variable index into the owning
// clause's variable table.
struct Term {
  int32_t v;

  static Term constant(SymId s) { return Term{static_cast<int32_t>(s)}; }
  static Term variable(uint32_t idx) { return Term{~static_cast<int32_t>(idx)}; }
  bool is_var() const { return v < 0; }
  uint32_t var() const { return static_cast<uint32_t>(~v); }
  SymId sym() const { return static_cast<SymId>(v); }
  bool operator==(const Term& o) const { return v == o.v; }
};

// Possibly non-ground atom pattern.
struct PatAtom {
  SymId pred;
  std::vector<Term> args;
  bool operator==(const PatAtom& o) const {
    return pred == o.pred && args == o.args;
  }
};

// Rule in clause form: head atoms, positive body atoms, and default
// negation literals (each a conjunction of atoms). Every variable occurs in
// posBody (range restriction).
struct SuperClause {
  std::vector<PatAtom> head;
  std::vector<PatAtom> posBody;
  std::vector<std::vector<PatAtom>> negBody;
  std::vector<std::string> varNames;

  bool ground() const { return varNames.empty(); }
};

struct QueryLiteral {
  bool negated = false;
  std::vector<PatAtom> atoms;  // conjunction when negated, else one atom
};

struct Query {
  std::vector<QueryLiteral> body;
  std::vector<std::string> varNames;
  std::string text;  // canonical echo, e.g. "? p(X), not r(X)."
};

struct Program {
  std::vector<SuperClause> clauses;
  std::vector<DefAtomId> monitored;
  std::vector<Query> queries;
};

// Printing (canonical, re-parseable).
std::string term_text(const Term& t, const SuperClause& cl, const Vocabulary& v);
std::string pat_text(const PatAtom& a, const SuperClause& cl, const Vocabulary& v);
std::string clause_text(const SuperClause& cl, const Vocabulary& v);
std::string program_text(const Program& p, const Vocabulary& v);

}  // namespace slp

#endif  // SLP_PROGRAM_HPP
