#ifndef SLP_PARSER_HPP
#define SLP_PARSER_HPP

#include <memory>
#include <string>
#include <vector>

#include "slp/lexer.hpp"
#include "slp/program.hpp"

namespace slp {

// Formula syntax tree. `not` is never nested (parser-enforced for the direct
// case, context check for the rest); strong negation atoms carry a flag and
// are renamed during the clausal transformation.
struct Formula;
using FormulaPtr = std::unique_ptr<Formula>;

struct Formula {
  enum Kind { Atom, True, False, Neg, NotF, And, Or, Then, If, Iff } kind;
  PatAtom atom;       // Kind::Atom
  bool strong = false;
  FormulaPtr lhs, rhs;  // unary kinds use lhs
  int line = 0, col = 0;
};

struct Statement {
  enum Kind { Rule, QueryStmt, Monitor } kind;
  FormulaPtr formula;              // Rule, Monitor (a `not` formula)
  Query query;                     // QueryStmt
  std::vector<std::string> varNames;
  int line = 0, col = 0;
};

struct ParsedFile {
  std::vector<Statement> statements;
};

ParsedFile parse_program_text(std::string_view src, Vocabulary& voc);

// Single formula ending in '.', mostly for tests and the monitor flag.
FormulaPtr parse_formula(std::span<const Token> toks, Vocabulary& voc,
                         std::vector<std::string>& varNames);

// Query body without the leading '?', ending in '.'.
Query parse_query_text(std::string_view src, Vocabulary& voc);

}  // namespace slp

#endif  // SLP_PARSER_HPP
