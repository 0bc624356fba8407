#include "slp/parser.hpp"

#include <algorithm>
#include <unordered_map>

#include "slp/clausal.hpp"

namespace slp {

namespace {

FormulaPtr mk(Formula::Kind k, int line, int col) {
  auto f = std::make_unique<Formula>();
  f->kind = k;
  f->line = line;
  f->col = col;
  return f;
}

struct Parser {
  std::span<const Token> toks;
  size_t pos = 0;
  Vocabulary& voc;
  std::vector<std::string>* varNames = nullptr;
  std::unordered_map<std::string, uint32_t> varIds;

  const Token& peek(size_t k = 0) const {
    return toks[std::min(pos + k, toks.size() - 1)];
  }
  const Token& advance() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    advance();
  }

  void reset_vars(std::vector<std::string>* names) {
    varNames = names;
    varIds.clear();
  }

  Term var_term(const Token& t) {
    if (t.text == "_") {
      uint32_t idx = static_cast<uint32_t>(varNames->size());
      varNames->push_back("_");
      return Term::variable(idx);
    }
    auto it = varIds.find(t.text);
    if (it != varIds.end()) return Term::variable(it->second);
    uint32_t idx = static_cast<uint32_t>(varNames->size());
    varNames->push_back(t.text);
    varIds.emplace(t.text, idx);
    return Term::variable(idx);
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        advance();
        return Term::constant(voc.symbols.intern(t.text));
      case Tok::Int:
        advance();
        return Term::constant(voc.symbols.intern(t.text));
      case Tok::Var:
        advance();
        return var_term(t);
      case Tok::Or:
        if (t.text == "v") fail("the atom 'v' must be quoted in this position");
        [[fallthrough]];
      default:
        fail("expected a constant, integer, or variable");
    }
  }

  PatAtom atom_tail(const Token& name) {
    PatAtom a;
    a.pred = voc.symbols.intern(name.text);
    if (peek().kind == Tok::LParen) {
      advance();
      a.args.push_back(term());
      while (peek().kind == Tok::And && peek().text == ",") {
        advance();
        a.args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  FormulaPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        advance();
        if (!t.quoted && t.text == "true") return mk(Formula::True, t.line, t.column);
        if (!t.quoted && t.text == "false") return mk(Formula::False, t.line, t.column);
        auto f = mk(Formula::Atom, t.line, t.column);
        f->atom = atom_tail(t);
        return f;
      }
      case Tok::Minus: {
        advance();
        const Token& name = peek();
        if (name.kind != Tok::Ident)
          fail("strong negation '-' must be applied to an atom");
        advance();
        auto f = mk(Formula::Atom, t.line, t.column);
        f->atom = atom_tail(name);
        f->strong = true;
        return f;
      }
      case Tok::LParen: {
        advance();
        auto f = p4();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Var:
        fail("a variable cannot stand alone as a formula");
      case Tok::Or:
        if (t.text == "v") fail("the atom 'v' must be quoted");
        fail("expected a formula");
      default:
        fail("expected a formula");
    }
  }

  FormulaPtr p1() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      advance();
      auto f = mk(Formula::Neg, t.line, t.column);
      f->lhs = p1();
      return f;
    }
    if (t.kind == Tok::Not) {
      advance();
      if (peek().kind == Tok::Not)
        fail("default negation cannot be nested");
      auto f = mk(Formula::NotF, t.line, t.column);
      f->lhs = primary();
      return f;
    }
    return primary();
  }

  FormulaPtr p2() {
    auto l = p1();
    if (peek().kind == Tok::And) {
      const Token& t = peek();
      advance();
      auto f = mk(Formula::And, t.line, t.column);
      f->lhs = std::move(l);
      f->rhs = p2();
      return f;
    }
    return l;
  }

  FormulaPtr p3() {
    auto l = p2();
    if (peek().kind == Tok::Or) {
      const Token& t = peek();
      advance();
      auto f = mk(Formula::Or, t.line, t.column);
      f->lhs = std::move(l);
      f->rhs = p3();
      return f;
    }
    return l;
  }

  static bool is_p4(Tok k) {
    return k == Tok::Then || k == Tok::If || k == Tok::Iff;
  }

  FormulaPtr p4() {
    auto l = p3();
    if (!is_p4(peek().kind)) return l;
    const Token& t = peek();
    advance();
    auto r = p3();
    if (is_p4(peek().kind))
      fail("implication operators are not associative; use parentheses");
    Formula::Kind k = t.kind == Tok::Then  ? Formula::Then
                      : t.kind == Tok::If ? Formula::If
                                          : Formula::Iff;
    auto f = mk(k, t.line, t.column);
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
  }

  FormulaPtr formula_statement() {
    auto f = p4();
    expect(Tok::FullStop, "'.'");
    return f;
  }

  // One query literal; negated literals may expand to several default atoms
  // via the disjunction-distribution of `not`.
  void query_literal(Query& q) {
    if (peek().kind == Tok::Not) {
      advance();
      if (peek().kind == Tok::Not) fail("default negation cannot be nested");
      auto f = primary();
      for (auto& conj : positive_dnf(*f, voc)) {
        QueryLiteral lit;
        lit.negated = true;
        lit.atoms = std::move(conj);
        q.body.push_back(std::move(lit));
      }
      return;
    }
    auto f = primary();
    if (f->kind != Formula::Atom)
      fail("query literals must be atoms or default negations");
    QueryLiteral lit;
    lit.atoms.push_back(strong_rename(f->atom, f->strong, voc));
    q.body.push_back(std::move(lit));
  }

  Statement statement() {
    Statement st;
    st.line = peek().line;
    st.col = peek().column;
    if (peek().kind == Tok::Question) {
      advance();
      st.kind = Statement::QueryStmt;
      reset_vars(&st.query.varNames);
      query_literal(st.query);
      while (peek().kind == Tok::And) {
        advance();
        query_literal(st.query);
      }
      expect(Tok::FullStop, "'.'");
      return st;
    }
    if (peek().kind == Tok::Directive) {
      const Token& d = peek();
      if (d.text != "monitor") fail("unknown directive '#" + d.text + "'");
      advance();
      st.kind = Statement::Monitor;
      reset_vars(&st.varNames);
      if (peek().kind != Tok::Not) fail("#monitor expects a default negation");
      st.formula = p1();
      expect(Tok::FullStop, "'.'");
      if (!st.varNames.empty())
        throw SyntaxError("#monitor expects a ground default negation",
                          st.line, st.col);
      return st;
    }
    st.kind = Statement::Rule;
    reset_vars(&st.varNames);
    st.formula = formula_statement();
    return st;
  }
};

}  // namespace

ParsedFile parse_program_text(std::string_view src, Vocabulary& voc) {
  auto toks = tokenize(src);
  Parser p{toks, 0, voc, nullptr, {}};
  ParsedFile out;
  while (p.peek().kind != Tok::End) out.statements.push_back(p.statement());
  return out;
}

FormulaPtr parse_formula(std::span<const Token> toks, Vocabulary& voc,
                         std::vector<std::string>& varNames) {
  Parser p{toks, 0, voc, nullptr, {}};
  p.reset_vars(&varNames);
  auto f = p.formula_statement();
  if (p.peek().kind != Tok::End) p.fail("unexpected trailing input");
  return f;
}

Query parse_query_text(std::string_view src, Vocabulary& voc) {
  auto toks = tokenize(src);
  Parser p{toks, 0, voc, nullptr, {}};
  Query q;
  p.reset_vars(&q.varNames);
  p.query_literal(q);
  while (p.peek().kind == Tok::And) {
    p.advance();
    p.query_literal(q);
  }
  p.expect(Tok::FullStop, "'.'");
  if (p.peek().kind != Tok::End) p.fail("unexpected trailing input");
  return q;
}

}  // namespace slp
