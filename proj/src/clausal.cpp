#include "slp/clausal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace slp {

namespace {

constexpr int kPos = 1;
constexpr int kNeg = 2;

void check_not_interior(const Formula& f) {
  switch (f.kind) {
    case Formula::Atom:
    case Formula::True:
    case Formula::False:
      return;
    case Formula::And:
    case Formula::Or:
      check_not_interior(*f.lhs);
      check_not_interior(*f.rhs);
      return;
    case Formula::NotF:
      throw SyntaxError("default negation cannot be nested", f.line, f.col);
    default:
      throw SyntaxError(
          "inside default negation only conjunction, disjunction, and atoms "
          "are allowed",
          f.line, f.col);
  }
}

void check_context_rec(const Formula& f, int mask) {
  switch (f.kind) {
    case Formula::Atom:
    case Formula::True:
    case Formula::False:
      return;
    case Formula::NotF:
      if (mask & kPos)
        throw SyntaxError("default negation must not appear in positive context",
                          f.line, f.col);
      check_not_interior(*f.lhs);
      return;
    case Formula::Neg: {
      int flipped = ((mask & kPos) ? kNeg : 0) | ((mask & kNeg) ? kPos : 0);
      check_context_rec(*f.lhs, flipped);
      return;
    }
    case Formula::And:
    case Formula::Or:
      check_context_rec(*f.lhs, mask);
      check_context_rec(*f.rhs, mask);
      return;
    case Formula::Then: {
      int flipped = ((mask & kPos) ? kNeg : 0) | ((mask & kNeg) ? kPos : 0);
      check_context_rec(*f.lhs, flipped);
      check_context_rec(*f.rhs, mask);
      return;
    }
    case Formula::If: {
      int flipped = ((mask & kPos) ? kNeg : 0) | ((mask & kNeg) ? kPos : 0);
      check_context_rec(*f.lhs, mask);
      check_context_rec(*f.rhs, flipped);
      return;
    }
    case Formula::Iff:
      check_context_rec(*f.lhs, kPos | kNeg);
      check_context_rec(*f.rhs, kPos | kNeg);
      return;
  }
}

// Negation-normal form node over literals. Default atoms appear only
// negated (guaranteed by the context check).
struct NForm {
  enum Kind { And, Or, LitPos, LitNegObj, LitNegDef, ConstTrue, ConstFalse };
  Kind kind;
  PatAtom atom;                     // LitPos / LitNegObj
  std::vector<PatAtom> defConj;     // LitNegDef: ~not(defConj)
  std::vector<std::unique_ptr<NForm>> kids;
};
using NPtr = std::unique_ptr<NForm>;

NPtr nleaf(NForm::Kind k) {
  auto n = std::make_unique<NForm>();
  n->kind = k;
  return n;
}

NPtr nbin(NForm::Kind k, NPtr a, NPtr b) {
  // Constant folding keeps the CNF step free of true/false.
  if (k == NForm::And) {
    if (a->kind == NForm::ConstFalse || b->kind == NForm::ConstFalse)
      return nleaf(NForm::ConstFalse);
    if (a->kind == NForm::ConstTrue) return b;
    if (b->kind == NForm::ConstTrue) return a;
  } else {
    if (a->kind == NForm::ConstTrue || b->kind == NForm::ConstTrue)
      return nleaf(NForm::ConstTrue);
    if (a->kind == NForm::ConstFalse) return b;
    if (b->kind == NForm::ConstFalse) return a;
  }
  auto n = std::make_unique<NForm>();
  n->kind = k;
  n->kids.push_back(std::move(a));
  n->kids.push_back(std::move(b));
  return n;
}

struct ClauseBuilder {
  Vocabulary& voc;

  NPtr nnf(const Formula& f, bool positive) {
    switch (f.kind) {
      case Formula::Atom: {
        auto n = nleaf(positive ? NForm::LitPos : NForm::LitNegObj);
        n->atom = strong_rename(f.atom, f.strong, voc);
        return n;
      }
      case Formula::True:
        return nleaf(positive ? NForm::ConstTrue : NForm::ConstFalse);
      case Formula::False:
        return nleaf(positive ? NForm::ConstFalse : NForm::ConstTrue);
      case Formula::Neg:
        return nnf(*f.lhs, !positive);
      case Formula::NotF: {
        // ~not(H): split H into disjuncts, one default atom per disjunct.
        auto disjuncts = positive_dnf(*f.lhs, voc);
        NPtr acc = nleaf(NForm::ConstFalse);
        for (auto& d : disjuncts) {
          NPtr lit;
          if (d.empty()) {
            lit = nleaf(NForm::ConstTrue);  // ~not(true)
          } else {
            lit = nleaf(NForm::LitNegDef);
            lit->defConj = std::move(d);
          }
          acc = nbin(NForm::Or, std::move(acc), std::move(lit));
        }
        return acc;
      }
      case Formula::And:
        return nbin(positive ? NForm::And : NForm::Or, nnf(*f.lhs, positive),
                    nnf(*f.rhs, positive));
      case Formula::Or:
        return nbin(positive ? NForm::Or : NForm::And, nnf(*f.lhs, positive),
                    nnf(*f.rhs, positive));
      case Formula::Then:
        if (positive)
          return nbin(NForm::Or, nnf(*f.lhs, false), nnf(*f.rhs, true));
        return nbin(NForm::And, nnf(*f.lhs, true), nnf(*f.rhs, false));
      case Formula::If:
        if (positive)
          return nbin(NForm::Or, nnf(*f.lhs, true), nnf(*f.rhs, false));
        return nbin(NForm::And, nnf(*f.lhs, false), nnf(*f.rhs, true));
      case Formula::Iff: {
        if (positive)
          return nbin(NForm::And,
                      nbin(NForm::Or, nnf(*f.lhs, false), nnf(*f.rhs, true)),
                      nbin(NForm::Or, nnf(*f.rhs, false), nnf(*f.lhs, true)));
        return nbin(NForm::Or,
                    nbin(NForm::And, nnf(*f.lhs, true), nnf(*f.rhs, false)),
                    nbin(NForm::And, nnf(*f.rhs, true), nnf(*f.lhs, false)));
      }
    }
    throw ContractError("unreachable formula kind");
  }

  struct RawClause {
    std::vector<PatAtom> head, pos;
    std::vector<std::vector<PatAtom>> neg;
  };

  std::vector<RawClause> cnf(const NForm& n) {
    switch (n.kind) {
      case NForm::ConstTrue:
        return {};
      case NForm::ConstFalse:
        return {RawClause{}};
      case NForm::LitPos: {
        RawClause c;
        c.head.push_back(n.atom);
        return {c};
      }
      case NForm::LitNegObj: {
        RawClause c;
        c.pos.push_back(n.atom);
        return {c};
      }
      case NForm::LitNegDef: {
        RawClause c;
        c.neg.push_back(n.defConj);
        return {c};
      }
      case NForm::And: {
        auto l = cnf(*n.kids[0]);
        auto r = cnf(*n.kids[1]);
        for (auto& c : r) l.push_back(std::move(c));
        return l;
      }
      case NForm::Or: {
        auto l = cnf(*n.kids[0]);
        auto r = cnf(*n.kids[1]);
        std::vector<RawClause> out;
        for (const auto& a : l)
          for (const auto& b : r) {
            RawClause c = a;
            c.head.insert(c.head.end(), b.head.begin(), b.head.end());
            c.pos.insert(c.pos.end(), b.pos.begin(), b.pos.end());
            c.neg.insert(c.neg.end(), b.neg.begin(), b.neg.end());
            out.push_back(std::move(c));
          }
        return out;
      }
    }
    throw ContractError("unreachable nnf kind");
  }
};

bool term_less(const Term& a, const Term& b, const Vocabulary& voc,
               const std::vector<std::string>& varNames) {
  if (a.is_var() != b.is_var()) return !a.is_var();
  if (a.is_var()) {
    const std::string& x = varNames[a.var()];
    const std::string& y = varNames[b.var()];
    if (x != y) return x < y;
    return a.var() < b.var();
  }
  return voc.symbols.text(a.sym()) < voc.symbols.text(b.sym());
}

bool pat_less(const PatAtom& a, const PatAtom& b, const Vocabulary& voc,
              const std::vector<std::string>& varNames) {
  if (a.pred != b.pred) {
    int c = voc.symbols.text(a.pred).compare(voc.symbols.text(b.pred));
    if (c != 0) return c < 0;
  }
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!(a.args[i] == b.args[i])) return term_less(a.args[i], b.args[i], voc, varNames);
  }
  return false;
}

void sort_dedup_atoms(std::vector<PatAtom>& v, const Vocabulary& voc,
                      const std::vector<std::string>& varNames) {
  std::sort(v.begin(), v.end(), [&](const PatAtom& a, const PatAtom& b) {
    return pat_less(a, b, voc, varNames);
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void collect_vars(const PatAtom& a, std::set<uint32_t>& out) {
  for (const Term& t : a.args)
    if (t.is_var()) out.insert(t.var());
}

}  // namespace

void check_context(const Formula& f) { check_context_rec(f, kPos); }

PatAtom strong_rename(PatAtom a, bool strong, Vocabulary& voc) {
  if (!strong) return a;
  a.pred = voc.symbols.intern(voc.symbols.text(a.pred) + "'");
  return a;
}

std::vector<std::vector<PatAtom>> positive_dnf(const Formula& f,
                                               Vocabulary& voc) {
  switch (f.kind) {
    case Formula::Atom:
      return {{strong_rename(f.atom, f.strong, voc)}};
    case Formula::True:
      return {{}};
    case Formula::False:
      return {};
    case Formula::Or: {
      auto l = positive_dnf(*f.lhs, voc);
      auto r = positive_dnf(*f.rhs, voc);
      for (auto& c : r)
        if (std::find(l.begin(), l.end(), c) == l.end()) l.push_back(std::move(c));
      return l;
    }
    case Formula::And: {
      auto l = positive_dnf(*f.lhs, voc);
      auto r = positive_dnf(*f.rhs, voc);
      std::vector<std::vector<PatAtom>> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          std::vector<PatAtom> c = a;
          for (const auto& x : b)
            if (std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
          if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(std::move(c));
        }
      return out;
    }
    default:
      throw SyntaxError(
          "inside default negation only conjunction, disjunction, and atoms "
          "are allowed",
          f.line, f.col);
  }
}

std::vector<SuperClause> to_clausal(const Formula& f,
                                    std::vector<std::string> varNames,
                                    Vocabulary& voc) {
  ClauseBuilder cb{voc};
  auto n = cb.nnf(f, true);
  auto raw = cb.cnf(*n);

  std::vector<SuperClause> out;
  for (auto& rc : raw) {
    SuperClause cl;
    cl.varNames = varNames;
    cl.head = std::move(rc.head);
    cl.posBody = std::move(rc.pos);
    sort_dedup_atoms(cl.head, voc, cl.varNames);
    sort_dedup_atoms(cl.posBody, voc, cl.varNames);
    // Tautology: some atom in both head and positive body.
    bool taut = false;
    for (const auto& a : cl.head)
      if (std::find(cl.posBody.begin(), cl.posBody.end(), a) !=
          cl.posBody.end())
        taut = true;
    if (taut) continue;
    bool dead = false;
    for (auto& conj : rc.neg) {
      if (conj.empty()) {
        // Body literal not(true) can never hold; the rule never fires.
        dead = true;
        break;
      }
      sort_dedup_atoms(conj, voc, cl.varNames);
      cl.negBody.push_back(std::move(conj));
    }
    if (dead) continue;
    std::sort(cl.negBody.begin(), cl.negBody.end(),
              [&](const std::vector<PatAtom>& a, const std::vector<PatAtom>& b) {
                size_t n2 = std::min(a.size(), b.size());
                for (size_t i = 0; i < n2; ++i)
                  if (!(a[i] == b[i])) return pat_less(a[i], b[i], voc, cl.varNames);
                return a.size() < b.size();
              });
    cl.negBody.erase(std::unique(cl.negBody.begin(), cl.negBody.end()),
                     cl.negBody.end());
    // Keep only variables that still occur; reindex.
    std::set<uint32_t> used;
    for (const auto& a : cl.head) collect_vars(a, used);
    for (const auto& a : cl.posBody) collect_vars(a, used);
    for (const auto& c : cl.negBody)
      for (const auto& a : c) collect_vars(a, used);
    if (used.size() != cl.varNames.size()) {
      std::map<uint32_t, uint32_t> remap;
      std::vector<std::string> names;
      for (uint32_t idx : used) {
        remap[idx] = static_cast<uint32_t>(names.size());
        names.push_back(cl.varNames[idx]);
      }
      auto fix = [&](PatAtom& a) {
        for (Term& t : a.args)
          if (t.is_var()) t = Term::variable(remap[t.var()]);
      };
      for (auto& a : cl.head) fix(a);
      for (auto& a : cl.posBody) fix(a);
      for (auto& c : cl.negBody)
        for (auto& a : c) fix(a);
      cl.varNames = std::move(names);
    }
    out.push_back(std::move(cl));
  }
  return out;
}

void check_range_restriction(const SuperClause& cl) {
  std::set<uint32_t> posVars;
  for (const auto& a : cl.posBody) collect_vars(a, posVars);
  std::set<uint32_t> all;
  for (const auto& a : cl.head) collect_vars(a, all);
  for (const auto& c : cl.negBody)
    for (const auto& a : c) collect_vars(a, all);
  std::string offenders;
  for (uint32_t v : all) {
    if (!posVars.count(v)) {
      if (!offenders.empty()) offenders += ", ";
      offenders += cl.varNames[v];
    }
  }
  if (!offenders.empty())
    throw SyntaxError("variable(s) " + offenders +
                          " do not occur in a positive body atom",
                      0, 0);
}

void expand_strong_negation(Program& p, Vocabulary& voc) {
  // Signatures (renamed predicate, arity) occurring anywhere.
  std::set<std::pair<SymId, size_t>> sigs;
  auto scan = [&](const PatAtom& a) {
    const std::string& t = voc.symbols.text(a.pred);
    if (t.size() > 1 && t.back() == '\'') sigs.insert({a.pred, a.args.size()});
  };
  for (const auto& cl : p.clauses) {
    for (const auto& a : cl.head) scan(a);
    for (const auto& a : cl.posBody) scan(a);
    for (const auto& c : cl.negBody)
      for (const auto& a : c) scan(a);
  }
  for (const auto& q : p.queries)
    for (const auto& lit : q.body)
      for (const auto& a : lit.atoms) scan(a);

  for (auto [mangled, arity] : sigs) {
    const std::string& t = voc.symbols.text(mangled);
    SymId base = voc.symbols.intern(t.substr(0, t.size() - 1));
    SuperClause cl;
    PatAtom pa{base, {}}, na{mangled, {}};
    for (size_t i = 0; i < arity; ++i) {
      cl.varNames.push_back("X" + std::to_string(i + 1));
      pa.args.push_back(Term::variable(static_cast<uint32_t>(i)));
      na.args.push_back(Term::variable(static_cast<uint32_t>(i)));
    }
    cl.posBody = {pa, na};
    sort_dedup_atoms(cl.posBody, voc, cl.varNames);
    bool present = false;
    for (const auto& existing : p.clauses)
      if (clauses_equal_modulo_vars(existing, cl)) present = true;
    if (!present) p.clauses.push_back(std::move(cl));
  }
}

Program load_program(std::string_view src, Vocabulary& voc) {
  ParsedFile file = parse_program_text(src, voc);
  Program prog;
  for (auto& st : file.statements) {
    switch (st.kind) {
      case Statement::Rule: {
        check_context(*st.formula);
        auto clauses = to_clausal(*st.formula, std::move(st.varNames), voc);
        for (auto& cl : clauses) {
          check_range_restriction(cl);
          prog.clauses.push_back(std::move(cl));
        }
        break;
      }
      case Statement::Monitor: {
        // st.formula is `not H`, ground; one monitored atom per disjunct.
        auto disjuncts = positive_dnf(*st.formula->lhs, voc);
        for (const auto& conj : disjuncts) {
          std::vector<AtomId> atoms;
          for (const auto& a : conj) {
            std::vector<SymId> args;
            for (const Term& t : a.args) args.push_back(t.sym());
            atoms.push_back(voc.atoms.intern(a.pred, std::move(args)));
          }
          DefAtomId d = voc.defaults.intern_atoms(std::move(atoms));
          if (std::find(prog.monitored.begin(), prog.monitored.end(), d) ==
              prog.monitored.end())
            prog.monitored.push_back(d);
        }
        break;
      }
      case Statement::QueryStmt: {
        // Every variable must be bound by a positive literal.
        std::set<uint32_t> posVars, all;
        for (const auto& lit : st.query.body)
          for (const auto& a : lit.atoms)
            (lit.negated ? collect_vars(a, all) : collect_vars(a, posVars));
        for (const auto& lit : st.query.body)
          for (const auto& a : lit.atoms) collect_vars(a, all);
        for (uint32_t vv : all)
          if (!posVars.count(vv))
            throw SyntaxError("query variable " + st.query.varNames[vv] +
                                  " does not occur in a positive literal",
                              st.line, st.col);
        prog.queries.push_back(std::move(st.query));
        break;
      }
    }
  }
  expand_strong_negation(prog, voc);
  // Regenerate canonical echo text for queries.
  for (auto& q : prog.queries) {
    SuperClause scratch;
    scratch.varNames = q.varNames;
    std::string t = "?";
    for (size_t i = 0; i < q.body.size(); ++i) {
      t += i ? ", " : " ";
      const auto& lit = q.body[i];
      if (!lit.negated) {
        t += pat_text(lit.atoms[0], scratch, voc);
      } else if (lit.atoms.size() == 1) {
        t += "not " + pat_text(lit.atoms[0], scratch, voc);
      } else {
        t += "not(";
        for (size_t j = 0; j < lit.atoms.size(); ++j) {
          if (j) t += " & ";
          t += pat_text(lit.atoms[j], scratch, voc);
        }
        t += ")";
      }
    }
    t += ".";
    q.text = t;
  }
  return prog;
}

bool clauses_equal_modulo_vars(const SuperClause& a, const SuperClause& b) {
  if (a.head.size() != b.head.size() || a.posBody.size() != b.posBody.size() ||
      a.negBody.size() != b.negBody.size() ||
      a.varNames.size() != b.varNames.size())
    return false;
  std::map<uint32_t, uint32_t> m;
  auto terms_match = [&](const Term& x, const Term& y) {
    if (x.is_var() != y.is_var()) return false;
    if (!x.is_var()) return x.sym() == y.sym();
    auto it = m.find(x.var());
    if (it == m.end()) {
      for (auto& [k, vv] : m)
        if (vv == y.var()) return false;
      m.emplace(x.var(), y.var());
      return true;
    }
    return it->second == y.var();
  };
  auto atoms_match = [&](const PatAtom& x, const PatAtom& y) {
    if (x.pred != y.pred || x.args.size() != y.args.size()) return false;
    for (size_t i = 0; i < x.args.size(); ++i)
      if (!terms_match(x.args[i], y.args[i])) return false;
    return true;
  };
  for (size_t i = 0; i < a.head.size(); ++i)
    if (!atoms_match(a.head[i], b.head[i])) return false;
  for (size_t i = 0; i < a.posBody.size(); ++i)
    if (!atoms_match(a.posBody[i], b.posBody[i])) return false;
  for (size_t i = 0; i < a.negBody.size(); ++i) {
    if (a.negBody[i].size() != b.negBody[i].size()) return false;
    for (size_t j = 0; j < a.negBody[i].size(); ++j)
      if (!atoms_match(a.negBody[i][j], b.negBody[i][j])) return false;
  }
  return true;
}

}  // namespace slp
