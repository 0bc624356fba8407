#include "slp/fact_store.hpp"

#include <algorithm>

namespace slp {

namespace {
const std::vector<FactId> kEmptyBucket;
}  // namespace

bool FactStore::head_has_answer(const ConditionalFact& f) const {
  if (!answerPred_) return false;
  for (AtomId a : f.head)
    if (atoms_->atom(a).pred == *answerPred_) return true;
  return false;
}

InsertResult FactStore::insert(ConditionalFact f) {
  if (f.head.empty() && f.cond.empty()) return InsertResult::Inconsistent;
  if (++testno_ == 0) {
    // epoch counter wrapped; invalidate all lazy counters
    for (Meta& m : meta_) m.lastset = 0;
    testno_ = 1;
  }
  const uint32_t tn = testno_;
  last_insert_touched = 0;
  last_insert_bucket_total = 0;
  const uint16_t newLen = static_cast<uint16_t>(f.length());

  // One counter bump per shared literal; a stored fact whose counter
  // reaches its own length covers the new fact, one that reaches the new
  // fact's length is covered by it and dies.
  auto scan = [&](const std::vector<FactId>& bucket) -> bool {
    last_insert_bucket_total += bucket.size();
    for (FactId id : bucket) {
      Meta& m = meta_[id];
      if (m.length == 0) continue;
      ++last_insert_touched;
      uint16_t overlap = m.lastset == tn ? m.overlap + 1 : 1;
      m.overlap = overlap;
      m.lastset = tn;
      if (overlap == m.length) return true;
      if (overlap == newLen) erase(id);
    }
    return false;
  };
  for (AtomId a : f.head) {
    auto it = headIndex_.find(a);
    if (it != headIndex_.end() && scan(it->second))
      return InsertResult::Subsumed;
  }
  for (DefAtomId d : f.cond) {
    auto it = condIndex_.find(d);
    if (it != condIndex_.end() && scan(it->second))
      return InsertResult::Subsumed;
  }

  FactId id = static_cast<FactId>(facts_.size());
  facts_.push_back(std::move(f));
  meta_.push_back(Meta{newLen, 0, 0});
  seqs_.push_back(seq_++);
  ++aliveCount_;
  const ConditionalFact& stored = facts_[id];
  bool answer = head_has_answer(stored);
  for (AtomId a : stored.head) {
    headIndex_[a].push_back(id);
    predIndex_[atoms_->atom(a).pred].push_back(id);
    if (!answer) ++headCount_[a];
  }
  for (DefAtomId d : stored.cond) condIndex_[d].push_back(id);
  return InsertResult::Inserted;
}

void FactStore::erase(FactId id) {
  if (meta_[id].length == 0) return;
  meta_[id].length = 0;
  --aliveCount_;
  if (!head_has_answer(facts_[id]))
    for (AtomId a : facts_[id].head) --headCount_[a];
}

const std::vector<FactId>& FactStore::by_pred(SymId pred) const {
  auto it = predIndex_.find(pred);
  return it == predIndex_.end() ? kEmptyBucket : it->second;
}

const std::vector<FactId>& FactStore::by_head_atom(AtomId a) const {
  auto it = headIndex_.find(a);
  return it == headIndex_.end() ? kEmptyBucket : it->second;
}

const std::vector<FactId>& FactStore::by_cond(DefAtomId d) const {
  auto it = condIndex_.find(d);
  return it == condIndex_.end() ? kEmptyBucket : it->second;
}

uint32_t FactStore::head_count(AtomId a) const {
  auto it = headCount_.find(a);
  return it == headCount_.end() ? 0 : it->second;
}

std::vector<FactId> FactStore::unconditional_facts() const {
  std::vector<FactId> out;
  for (FactId id = 0; id < facts_.size(); ++id)
    if (alive(id) && facts_[id].cond.empty()) out.push_back(id);
  return out;
}

std::vector<ConditionalFact> FactStore::contents() const {
  std::vector<ConditionalFact> out;
  for (FactId id = 0; id < facts_.size(); ++id)
    if (alive(id)) out.push_back(facts_[id]);
  return out;
}

}  // namespace slp
