#ifndef SLP_CORE_HPP
#define SLP_CORE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

// Ground representations shared by the whole pipeline: interned symbols,
// objective atoms, default negation atoms, conditional facts, and truth
// assignments over fixed atom sets.

namespace slp {

using SymId = uint32_t;
using AtomId = uint32_t;
using DefAtomId = uint32_t;

constexpr const char* kAnswerPred = "$answer";

// ---------------------------------------------------------------------------
// Errors

struct SyntaxError : std::runtime_error {
  int line, column;
  SyntaxError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), column(col_) {}
};

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the empty conditional fact is derived.
struct InconsistentProgram : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Symbols

// Constants, integers and predicate names share one interned symbol space;
// integers are interned by their decimal text.
class SymbolTable {
 public:
  SymId intern(std::string_view text);
  const std::string& text(SymId id) const { return texts_.at(id); }
  size_t size() const { return texts_.size(); }

 private:
  std::vector<std::string> texts_;
  std::unordered_map<std::string, SymId> ids_;
};

// ---------------------------------------------------------------------------
// Ground atoms

struct GroundAtom {
  SymId pred;
  std::vector<SymId> args;

  bool operator==(const GroundAtom& o) const {
    return pred == o.pred && args == o.args;
  }
};

class AtomTable {
 public:
  explicit AtomTable(SymbolTable* syms) : syms_(syms) {}

  AtomId intern(SymId pred, std::vector<SymId> args = {});
  AtomId intern(std::string_view pred, const std::vector<std::string>& args);

  const GroundAtom& atom(AtomId id) const { return atoms_.at(id); }
  size_t size() const { return atoms_.size(); }
  SymbolTable& symbols() { return *syms_; }
  const SymbolTable& symbols() const { return *syms_; }

  // Total order: (predicate text, arity, argument texts).
  bool canonical_less(AtomId a, AtomId b) const;
  void canonical_sort(std::vector<AtomId>& ids) const;

  std::string text(AtomId id) const;
  bool is_answer(AtomId id) const;
  std::optional<SymId> answer_pred() const;

 private:
  struct Key {
    SymId pred;
    std::vector<SymId> args;
    bool operator==(const Key& o) const {
      return pred == o.pred && args == o.args;
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };

  SymbolTable* syms_;
  std::vector<GroundAtom> atoms_;
  std::unordered_map<Key, AtomId, KeyHash> ids_;
};

// True if the name can be printed without quotes: [a-z][A-Za-z0-9_]* and not
// an operator or reserved word.
bool plain_atom_name(std::string_view name);
std::string quote_atom_name(std::string_view name);

// ---------------------------------------------------------------------------
// Default negation atoms

// A default atom not(p1 & ... & pn), kept as a duplicate-free set of atom
// ids. The empty body is not(true), the constant-false literal.
struct DefaultAtom {
  std::vector<AtomId> body;  // sorted by id, deduplicated

  bool operator==(const DefaultAtom& o) const { return body == o.body; }
  bool is_false_literal() const { return body.empty(); }  // not(true)
};

DefaultAtom canonicalize(std::vector<AtomId> atoms);

class DefaultAtomTable {
 public:
  DefAtomId intern(DefaultAtom d);
  DefAtomId intern_atoms(std::vector<AtomId> atoms) {
    return intern(canonicalize(std::move(atoms)));
  }

  const DefaultAtom& def(DefAtomId id) const { return defs_.at(id); }
  size_t size() const { return defs_.size(); }

  bool is_false_literal(DefAtomId id) const {
    return defs_.at(id).body.empty();
  }
  std::optional<AtomId> singleton(DefAtomId id) const;
  std::optional<DefAtomId> find_singleton(AtomId a) const;

  // Total order: lexicographic on canonically sorted bodies.
  bool canonical_less(DefAtomId a, DefAtomId b, const AtomTable& atoms) const;
  void canonical_sort(std::vector<DefAtomId>& ids, const AtomTable& a) const;

  std::string text(DefAtomId id, const AtomTable& atoms) const;

 private:
  struct VecHash {
    size_t operator()(const std::vector<AtomId>& v) const;
  };
  std::vector<DefaultAtom> defs_;
  std::unordered_map<std::vector<AtomId>, DefAtomId, VecHash> ids_;
};

// One interning context for a whole pipeline run. Interning mutates the
// tables; share across threads only once loading is finished.
struct Vocabulary {
  SymbolTable symbols;
  AtomTable atoms{&symbols};
  DefaultAtomTable defaults;
};

// ---------------------------------------------------------------------------
// Conditional facts

// Ground disjunctive head implied by a conjunction of default atoms.
// The empty fact (head and cond both empty) witnesses inconsistency and is
// never stored.
struct ConditionalFact {
  std::vector<AtomId> head;     // sorted by id, deduplicated
  std::vector<DefAtomId> cond;  // sorted by id, deduplicated

  bool operator==(const ConditionalFact& o) const {
    return head == o.head && cond == o.cond;
  }
  size_t length() const { return head.size() + cond.size(); }
};

ConditionalFact make_fact(std::vector<AtomId> head, std::vector<DefAtomId> cond);

std::string fact_text(const ConditionalFact& f, const Vocabulary& voc);

// ---------------------------------------------------------------------------
// Interpretations

// Truth assignment over a fixed, ordered set of default atoms (the monitored
// or critical set). Total on that set, undefined elsewhere.
class DefInterp {
 public:
  DefInterp() = default;
  DefInterp(const std::vector<DefAtomId>* domain, uint64_t bits)
      : domain_(domain), bits_(bits) {}

  bool value(DefAtomId d) const;
  uint64_t bits() const { return bits_; }
  const std::vector<DefAtomId>& domain() const { return *domain_; }

 private:
  const std::vector<DefAtomId>* domain_ = nullptr;
  uint64_t bits_ = 0;
};

// Truth assignment over a fixed, ordered set of objective atoms.
class ObjInterp {
 public:
  ObjInterp() = default;
  ObjInterp(const std::vector<AtomId>* domain, uint64_t bits)
      : domain_(domain), bits_(bits) {}

  bool value(AtomId a) const;
  uint64_t bits() const { return bits_; }
  const std::vector<AtomId>& domain() const { return *domain_; }

 private:
  const std::vector<AtomId>* domain_ = nullptr;
  uint64_t bits_ = 0;
};

bool eval(const DefInterp& defI, DefAtomId d);
bool eval(const ObjInterp& objI, AtomId a);
bool eval_disjunction(const ObjInterp& objI, std::span<const AtomId> atoms);
bool eval_condition(const DefInterp& defI, std::span<const DefAtomId> cond);
// A conditional fact holds iff its condition is false or some head atom true.
bool eval_fact(const DefInterp& defI, const ObjInterp& objI,
               const ConditionalFact& f);

}  // namespace slp

#endif  // SLP_CORE_HPP
