#include "slp/core.hpp"

#include <algorithm>
#include <cctype>

namespace slp {

SymId SymbolTable::intern(std::string_view text) {
  auto it = ids_.find(std::string(text));
  if (it != ids_.end()) return it->second;
  SymId id = static_cast<SymId>(texts_.size());
  texts_.emplace_back(text);
  ids_.emplace(texts_.back(), id);
  return id;
}

size_t AtomTable::KeyHash::operator()(const Key& k) const {
  size_t h = std::hash<uint32_t>()(k.pred);
  for (SymId a : k.args) h = h * 1000003u + a;
  return h;
}

AtomId AtomTable::intern(SymId pred, std::vector<SymId> args) {
  Key key{pred, args};
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  AtomId id = static_cast<AtomId>(atoms_.size());
  atoms_.push_back(GroundAtom{pred, std::move(args)});
  ids_.emplace(std::move(key), id);
  return id;
}

AtomId AtomTable::intern(std::string_view pred,
                         const std::vector<std::string>& args) {
  std::vector<SymId> ids;
  ids.reserve(args.size());
  for (const auto& a : args) ids.push_back(syms_->intern(a));
  return intern(syms_->intern(pred), std::move(ids));
}

bool AtomTable::canonical_less(AtomId a, AtomId b) const {
  const GroundAtom& x = atoms_[a];
  const GroundAtom& y = atoms_[b];
  if (x.pred != y.pred) {
    int c = syms_->text(x.pred).compare(syms_->text(y.pred));
    if (c != 0) return c < 0;
  }
  if (x.args.size() != y.args.size()) return x.args.size() < y.args.size();
  for (size_t i = 0; i < x.args.size(); ++i) {
    if (x.args[i] != y.args[i]) {
      int c = syms_->text(x.args[i]).compare(syms_->text(y.args[i]));
      if (c != 0) return c < 0;
    }
  }
  return false;
}

void AtomTable::canonical_sort(std::vector<AtomId>& ids) const {
  std::sort(ids.begin(), ids.end(),
            [this](AtomId a, AtomId b) { return canonical_less(a, b); });
}

bool plain_atom_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  if (name == "v" || name == "not" || name == "true" || name == "false")
    return false;
  return true;
}

std::string quote_atom_name(std::string_view name) {
  // Integers and reserved internal names print bare; anything else
  // non-plain is quoted.
  bool numeric = !name.empty();
  for (char c : name)
    if (!std::isdigit(static_cast<unsigned char>(c))) numeric = false;
  if (numeric || plain_atom_name(name)) return std::string(name);
  if (!name.empty() && name[0] == '$') return std::string(name);
  return "'" + std::string(name) + "'";
}

std::string AtomTable::text(AtomId id) const {
  const GroundAtom& a = atoms_.at(id);
  const std::string& pred = syms_->text(a.pred);
  std::string out;
  // Strong negation atoms are interned with a trailing apostrophe.
  if (pred.size() > 1 && pred.back() == '\'') {
    out = "-" + quote_atom_name(std::string_view(pred).substr(0, pred.size() - 1));
  } else {
    out = quote_atom_name(pred);
  }
  if (!a.args.empty()) {
    out += '(';
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += quote_atom_name(syms_->text(a.args[i]));
    }
    out += ')';
  }
  return out;
}

bool AtomTable::is_answer(AtomId id) const {
  return syms_->text(atoms_.at(id).pred) == kAnswerPred;
}

std::optional<SymId> AtomTable::answer_pred() const {
  for (SymId s = 0; s < syms_->size(); ++s)
    if (syms_->text(s) == kAnswerPred) return s;
  return std::nullopt;
}

DefaultAtom canonicalize(std::vector<AtomId> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return DefaultAtom{std::move(atoms)};
}

size_t DefaultAtomTable::VecHash::operator()(
    const std::vector<AtomId>& v) const {
  size_t h = 0x9e3779b9;
  for (AtomId a : v) h = h * 1000003u + a;
  return h;
}

DefAtomId DefaultAtomTable::intern(DefaultAtom d) {
  auto it = ids_.find(d.body);
  if (it != ids_.end()) return it->second;
  DefAtomId id = static_cast<DefAtomId>(defs_.size());
  ids_.emplace(d.body, id);
  defs_.push_back(std::move(d));
  return id;
}

std::optional<AtomId> DefaultAtomTable::singleton(DefAtomId id) const {
  const auto& b = defs_.at(id).body;
  if (b.size() == 1) return b[0];
  return std::nullopt;
}

std::optional<DefAtomId> DefaultAtomTable::find_singleton(AtomId a) const {
  auto it = ids_.find(std::vector<AtomId>{a});
  if (it != ids_.end()) return it->second;
  return std::nullopt;
}

bool DefaultAtomTable::canonical_less(DefAtomId a, DefAtomId b,
                                      const AtomTable& atoms) const {
  std::vector<AtomId> x = defs_.at(a).body;
  std::vector<AtomId> y = defs_.at(b).body;
  atoms.canonical_sort(x);
  atoms.canonical_sort(y);
  size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    if (x[i] != y[i]) return atoms.canonical_less(x[i], y[i]);
  }
  return x.size() < y.size();
}

void DefaultAtomTable::canonical_sort(std::vector<DefAtomId>& ids,
                                      const AtomTable& a) const {
  std::sort(ids.begin(), ids.end(), [&](DefAtomId x, DefAtomId y) {
    return canonical_less(x, y, a);
  });
}

std::string DefaultAtomTable::text(DefAtomId id, const AtomTable& atoms) const {
  std::vector<AtomId> body = defs_.at(id).body;
  if (body.empty()) return "not(true)";
  atoms.canonical_sort(body);
  if (body.size() == 1) return "not " + atoms.text(body[0]);
  std::string out = "not(";
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += " & ";
    out += atoms.text(body[i]);
  }
  out += ')';
  return out;
}

ConditionalFact make_fact(std::vector<AtomId> head,
                          std::vector<DefAtomId> cond) {
  std::sort(head.begin(), head.end());
  head.erase(std::unique(head.begin(), head.end()), head.end());
  std::sort(cond.begin(), cond.end());
  cond.erase(std::unique(cond.begin(), cond.end()), cond.end());
  return ConditionalFact{std::move(head), std::move(cond)};
}

std::string fact_text(const ConditionalFact& f, const Vocabulary& voc) {
  std::string out;
  if (f.head.empty()) {
    out = "false";
  } else {
    std::vector<AtomId> head = f.head;
    voc.atoms.canonical_sort(head);
    for (size_t i = 0; i < head.size(); ++i) {
      if (i) out += " | ";
      out += voc.atoms.text(head[i]);
    }
  }
  if (!f.cond.empty()) {
    std::vector<DefAtomId> cond = f.cond;
    voc.defaults.canonical_sort(cond, voc.atoms);
    out += " <- ";
    for (size_t i = 0; i < cond.size(); ++i) {
      if (i) out += ", ";
      out += voc.defaults.text(cond[i], voc.atoms);
    }
  }
  out += '.';
  return out;
}

bool DefInterp::value(DefAtomId d) const {
  if (domain_) {
    for (size_t i = 0; i < domain_->size(); ++i)
      if ((*domain_)[i] == d) return (bits_ >> i) & 1;
  }
  throw ContractError("default atom not in the monitored set");
}

bool ObjInterp::value(AtomId a) const {
  if (domain_) {
    for (size_t i = 0; i < domain_->size(); ++i)
      if ((*domain_)[i] == a) return (bits_ >> i) & 1;
  }
  throw ContractError("objective atom not in the critical set");
}

bool eval(const DefInterp& defI, DefAtomId d) { return defI.value(d); }
bool eval(const ObjInterp& objI, AtomId a) { return objI.value(a); }

bool eval_disjunction(const ObjInterp& objI, std::span<const AtomId> atoms) {
  for (AtomId a : atoms)
    if (objI.value(a)) return true;
  return false;
}

bool eval_condition(const DefInterp& defI, std::span<const DefAtomId> cond) {
  for (DefAtomId d : cond)
    if (!defI.value(d)) return false;
  return true;
}

bool eval_fact(const DefInterp& defI, const ObjInterp& objI,
               const ConditionalFact& f) {
  if (!eval_condition(defI, f.cond)) return true;
  return eval_disjunction(objI, f.head);
}

}  // namespace slp
