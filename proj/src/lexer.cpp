#include "slp/lexer.hpp"

#include <cctype>

#include "slp/core.hpp"

namespace slp {

namespace {

struct Cursor {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= src.size(); }
  char peek(size_t k = 0) const {
    return pos + k < src.size() ? src[pos + k] : '\0';
  }
  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  Cursor cur{src};
  auto push = [&](Tok k, std::string text, int line, int col,
                  bool quoted = false) {
    out.push_back(Token{k, std::move(text), line, col, quoted});
  };

  while (!cur.done()) {
    char c = cur.peek();
    int line = cur.line, col = cur.col;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '%') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        num += cur.advance();
      push(Tok::Int, std::move(num), line, col);
      continue;
    }
    if (c == '\'') {
      cur.advance();
      std::string name;
      while (!cur.done() && cur.peek() != '\'' && cur.peek() != '\n')
        name += cur.advance();
      if (cur.done() || cur.peek() != '\'')
        throw SyntaxError("unterminated quoted atom", line, col);
      cur.advance();
      if (name.empty())
        throw SyntaxError("empty quoted atom", line, col);
      if (name[0] == '$')
        throw SyntaxError("atom names starting with '$' are reserved", line, col);
      push(Tok::Ident, std::move(name), line, col, /*quoted=*/true);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (!cur.done() && ident_char(cur.peek())) name += cur.advance();
      if (name == "not") {
        push(Tok::Not, name, line, col);
      } else if (name == "v") {
        push(Tok::Or, name, line, col);
      } else if (std::isupper(static_cast<unsigned char>(name[0])) ||
                 name[0] == '_') {
        push(Tok::Var, std::move(name), line, col);
      } else {
        push(Tok::Ident, std::move(name), line, col);
      }
      continue;
    }
    switch (c) {
      case '~':
        cur.advance();
        push(Tok::Tilde, "~", line, col);
        continue;
      case '&':
      case ',':
        cur.advance();
        push(Tok::And, std::string(1, c), line, col);
        continue;
      case '|':
      case ';':
        cur.advance();
        push(Tok::Or, std::string(1, c), line, col);
        continue;
      case '(':
        cur.advance();
        push(Tok::LParen, "(", line, col);
        continue;
      case ')':
        cur.advance();
        push(Tok::RParen, ")", line, col);
        continue;
      case '.':
        cur.advance();
        push(Tok::FullStop, ".", line, col);
        continue;
      case '?':
        cur.advance();
        push(Tok::Question, "?", line, col);
        continue;
      case '-':
        if (cur.peek(1) == '>') {
          cur.advance();
          cur.advance();
          push(Tok::Then, "->", line, col);
        } else {
          cur.advance();
          push(Tok::Minus, "-", line, col);
        }
        continue;
      case '<':
        if (cur.peek(1) == '-' && cur.peek(2) == '>') {
          cur.advance();
          cur.advance();
          cur.advance();
          push(Tok::Iff, "<->", line, col);
        } else if (cur.peek(1) == '-') {
          cur.advance();
          cur.advance();
          push(Tok::If, "<-", line, col);
        } else {
          throw SyntaxError("stray '<'", line, col);
        }
        continue;
      case ':':
        if (cur.peek(1) == '-') {
          cur.advance();
          cur.advance();
          push(Tok::If, ":-", line, col);
        } else {
          throw SyntaxError("stray ':'", line, col);
        }
        continue;
      case '#': {
        cur.advance();
        std::string name;
        while (!cur.done() && ident_char(cur.peek())) name += cur.advance();
        if (name.empty()) throw SyntaxError("empty directive", line, col);
        push(Tok::Directive, std::move(name), line, col);
        continue;
      }
      default:
        throw SyntaxError(std::string("illegal character '") + c + "'", line,
                          col);
    }
  }
  out.push_back(Token{Tok::End, "", cur.line, cur.col});
  return out;
}

}  // namespace slp
