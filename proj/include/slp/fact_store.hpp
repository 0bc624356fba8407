#ifndef SLP_FACT_STORE_HPP
#define SLP_FACT_STORE_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "slp/core.hpp"

namespace slp {

using FactId = uint32_t;

enum class InsertResult { Inserted, Subsumed, Inconsistent };

// Antichain of conditional facts with a per-literal occurrence index and
// overlap counting for duplicate/non-minimal detection. Head atoms and
// condition literals are indexed separately; a lazily initialized counter
// per fact avoids resetting between tests. The counters live in their own
// array so the insert scan stays on hot cache lines.
class FactStore {
 public:
  explicit FactStore(const AtomTable* atoms,
                     std::optional<SymId> answerPred = std::nullopt)
      : answerPred_(answerPred), atoms_(atoms) {}

  InsertResult insert(ConditionalFact f);
  void erase(FactId id);

  bool alive(FactId id) const { return meta_[id].length != 0; }
  const ConditionalFact& fact(FactId id) const { return facts_[id]; }
  uint64_t seq(FactId id) const { return seqs_[id]; }
  size_t slot_count() const { return facts_.size(); }
  size_t alive_count() const { return aliveCount_; }
  uint64_t next_seq() const { return seq_; }

  // Facts whose head contains an atom with this predicate.
  const std::vector<FactId>& by_pred(SymId pred) const;
  const std::vector<FactId>& by_head_atom(AtomId a) const;
  const std::vector<FactId>& by_cond(DefAtomId d) const;

  // Alive facts with the atom in their head, not counting answer-predicate
  // facts (those are bookkeeping for queries, not program content).
  uint32_t head_count(AtomId a) const;

  std::vector<FactId> unconditional_facts() const;
  std::vector<ConditionalFact> contents() const;

  bool head_has_answer(const ConditionalFact& f) const;

  // Instrumentation for the index-cost check: slots touched by the last
  // insert and the total size of the buckets it was allowed to touch.
  uint64_t last_insert_touched = 0;
  uint64_t last_insert_bucket_total = 0;

 private:
  // Packed to one word so the overlap scan stays cache-resident.
  struct Meta {
    uint16_t length = 0;   // 0 marks a deleted fact
    uint16_t overlap = 0;
    uint32_t lastset = 0;
  };

  std::optional<SymId> answerPred_;
  const AtomTable* atoms_;
  std::vector<ConditionalFact> facts_;
  std::vector<Meta> meta_;
  std::vector<uint64_t> seqs_;
  uint32_t testno_ = 0;
  uint64_t seq_ = 0;
  size_t aliveCount_ = 0;
  std::unordered_map<AtomId, std::vector<FactId>> headIndex_;
  std::unordered_map<DefAtomId, std::vector<FactId>> condIndex_;
  std::unordered_map<SymId, std::vector<FactId>> predIndex_;
  std::unordered_map<AtomId, uint32_t> headCount_;
};

}  // namespace slp

#endif  // SLP_FACT_STORE_HPP
