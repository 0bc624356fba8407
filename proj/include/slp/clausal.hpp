#ifndef SLP_CLAUSAL_HPP
#define SLP_CLAUSAL_HPP

#include <string_view>
#include <vector>

#include "slp/parser.hpp"
#include "slp/program.hpp"

namespace slp {

// Rejects `not` in positive context and anything but &, |, atoms inside it.
void check_context(const Formula& f);

// Clausal transformation of a context-checked formula: eliminates <->, ->,
// <-, pushes ~ to atoms, splits `not` over disjunctions, and distributes to
// clause form. Tautologies and clauses with an unsatisfiable not(true) body
// literal are dropped. Strong negation atoms are renamed (p -> p').
std::vector<SuperClause> to_clausal(const Formula& f,
                                    std::vector<std::string> varNames,
                                    Vocabulary& voc);

// Every variable of the clause must occur in a positive body atom.
void check_range_restriction(const SuperClause& cl);

// DNF of a positive formula (conjunction sets over atoms); strong atoms are
// renamed. Shared by rule bodies and query literals.
std::vector<std::vector<PatAtom>> positive_dnf(const Formula& f,
                                               Vocabulary& voc);
PatAtom strong_rename(PatAtom a, bool strong, Vocabulary& voc);

// Appends the constraint clause `false <- p(X...), p'(X...)` for every
// strong negation signature occurring in the program or its queries.
void expand_strong_negation(Program& p, Vocabulary& voc);

// Full frontend: parse, check, transform, range-check, strong-negation
// expansion, monitors and queries.
Program load_program(std::string_view src, Vocabulary& voc);

bool clauses_equal_modulo_vars(const SuperClause& a, const SuperClause& b);

}  // namespace slp

#endif  // SLP_CLAUSAL_HPP
