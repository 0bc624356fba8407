#include "slp/program.hpp"

namespace slp {

std::string term_text(const Term& t, const SuperClause& cl,
                      const Vocabulary& v) {
  if (t.is_var()) return cl.varNames[t.var()];
  return quote_atom_name(v.symbols.text(t.sym()));
}

std::string pat_text(const PatAtom& a, const SuperClause& cl,
                     const Vocabulary& v) {
  const std::string& pred = v.symbols.text(a.pred);
  std::string out;
  if (pred.size() > 1 && pred.back() == '\'') {
    out = "-" + quote_atom_name(std::string_view(pred).substr(0, pred.size() - 1));
  } else {
    out = quote_atom_name(pred);
  }
  if (!a.args.empty()) {
    out += '(';
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += term_text(a.args[i], cl, v);
    }
    out += ')';
  }
  return out;
}

std::string clause_text(const SuperClause& cl, const Vocabulary& v) {
  std::string out;
  if (cl.head.empty()) {
    out = "false";
  } else {
    for (size_t i = 0; i < cl.head.size(); ++i) {
      if (i) out += " | ";
      out += pat_text(cl.head[i], cl, v);
    }
  }
  bool hasBody = !cl.posBody.empty() || !cl.negBody.empty();
  if (hasBody) {
    out += " <- ";
    bool first = true;
    for (const auto& a : cl.posBody) {
      if (!first) out += " & ";
      first = false;
      out += pat_text(a, cl, v);
    }
    for (const auto& conj : cl.negBody) {
      if (!first) out += " & ";
      first = false;
      if (conj.size() == 1) {
        out += "not " + pat_text(conj[0], cl, v);
      } else {
        out += "not(";
        for (size_t j = 0; j < conj.size(); ++j) {
          if (j) out += " & ";
          out += pat_text(conj[j], cl, v);
        }
        out += ')';
      }
    }
  }
  out += '.';
  return out;
}

std::string program_text(const Program& p, const Vocabulary& v) {
  std::string out;
  for (const auto& cl : p.clauses) {
    out += clause_text(cl, v);
    out += '\n';
  }
  return out;
}

}  // namespace slp
