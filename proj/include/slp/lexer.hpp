#ifndef SLP_LEXER_HPP
#define SLP_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

namespace slp {

enum class Tok {
  Ident,      // lowercase-initial or quoted
  Var,        // uppercase- or underscore-initial
  Int,
  Tilde,      // ~
  Not,        // not
  And,        // & or ,
  Or,         // | or ; or bare v
  Then,       // ->
  If,         // <- or :-
  Iff,        // <->
  Minus,      // - (strong negation)
  LParen,
  RParen,
  FullStop,   // .
  Question,   // ?
  Directive,  // #name
  End,
};

struct Token {
  Tok kind;
  std::string text;  // identifier/variable/integer/directive payload
  int line;
  int column;
  bool quoted = false;  // Ident came from a quoted atom
};

std::vector<Token> tokenize(std::string_view src);

}  // namespace slp

#endif  // SLP_LEXER_HPP
