#include "camp/camp_cache.hpp"

#include <stdexcept>

namespace camp {

static constexpr double kMaxExactOffset = 4503599627370496.0;  // 2^52

CampCache::CampCache(std::uint64_t capacity_bytes, Precision precision)
    : CampCache(capacity_bytes, precision, Options{}) {}

CampCache::CampCache(std::uint64_t capacity_bytes, Precision precision, Options options)
    : capacity_(capacity_bytes), options_(options), heap_(options.heap_arity) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be >= 1 byte");
  ctx_.precision = precision;
}

void CampCache::set_offset(double value) {
  if (value < offset_) throw std::logic_error("camp: offset decreased");
  if (value >= kMaxExactOffset) throw std::overflow_error("camp: offset left the exact-integer range");
  offset_ = value;
}

CampCache::Entry CampCache::detach(const EntryRef& ref) {
  auto queue_it = queues_.find(ref.ratio);
  Queue& queue = queue_it->second;
  const bool was_head = ref.it == queue.entries.begin();
  Entry entry = std::move(*ref.it);
  queue.entries.erase(ref.it);
  if (queue.entries.empty()) {
    heap_.remove(queue.handle);
    queues_.erase(queue_it);
  } else if (was_head) {
    heap_.update_priority(queue.handle,
                          CampPriority{queue.entries.front().priority, ref.ratio});
  }
  return entry;
}

void CampCache::append(Entry entry) {
  const std::uint64_t ratio = entry.ratio;
  auto [queue_it, created] = queues_.try_emplace(ratio);
  Queue& queue = queue_it->second;
  queue.entries.push_back(std::move(entry));
  auto entry_it = std::prev(queue.entries.end());
  if (created) queue.handle = heap_.push(CampPriority{entry_it->priority, ratio}, ratio);
  index_[entry_it->key] = EntryRef{ratio, entry_it};
}

PolicyDecision CampCache::request(const TraceRecord& record) {
  validate_record(record);
  ctx_.observe_size(record.size);

  if (auto idx = index_.find(record.key); idx != index_.end()) {
    Entry entry = detach(idx->second);
    if (entry.size != record.size || entry.cost != record.cost) ++mismatch_warnings_;
    // With the entry unlinked, the heap minimum is the smallest head over
    // the remaining entries; a cache holding only this entry leaves L as is.
    if (!heap_.empty()) set_offset(heap_.peek_min().first.h);
    if (options_.reratio_on_hit) entry.ratio = rounded_ratio(entry.cost, entry.size, ctx_);
    entry.priority = offset_ + static_cast<double>(entry.ratio);
    append(std::move(entry));
    return {Outcome::kHit, {}};
  }

  if (record.size > capacity_) return {Outcome::kUncacheable, {}};

  PolicyDecision decision{Outcome::kMiss, {}};
  while (capacity_ - resident_ < record.size) {
    const std::uint64_t ratio = heap_.peek_min().second;
    Queue& queue = queues_.at(ratio);
    Entry& victim = queue.entries.front();
    set_offset(victim.priority);
    resident_ -= victim.size;
    index_.erase(victim.key);
    decision.evicted.push_back(std::move(victim.key));
    queue.entries.pop_front();
    if (queue.entries.empty()) {
      heap_.remove(queue.handle);
      queues_.erase(ratio);
    } else {
      heap_.update_priority(queue.handle,
                            CampPriority{queue.entries.front().priority, ratio});
    }
  }

  Entry entry;
  entry.key = record.key;
  entry.size = record.size;
  entry.cost = record.cost;
  entry.ratio = rounded_ratio(record.cost, record.size, ctx_);
  entry.priority = offset_ + static_cast<double>(entry.ratio);
  resident_ += entry.size;
  append(std::move(entry));
  return decision;
}

bool CampCache::contains(std::string_view key) const {
  return index_.find(key) != index_.end();
}

double CampCache::priority_of(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw std::out_of_range("camp: key not resident");
  return it->second.it->priority;
}

std::uint64_t CampCache::ratio_of(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw std::out_of_range("camp: key not resident");
  return it->second.ratio;
}

void CampCache::validate_invariants() const {
  if (heap_.size() != queues_.size())
    throw std::logic_error("camp: heap size differs from live queue count");

  std::uint64_t total = 0;
  std::size_t entry_count = 0;
  bool have_min = false;
  CampPriority min_head{};
  for (const auto& [ratio, queue] : queues_) {
    if (queue.entries.empty()) throw std::logic_error("camp: empty queue kept alive");
    double prev = queue.entries.front().priority;
    for (const Entry& entry : queue.entries) {
      ++entry_count;
      total += entry.size;
      if (entry.ratio != ratio) throw std::logic_error("camp: entry in the wrong queue");
      if (entry.priority < prev) throw std::logic_error("camp: queue priorities not ordered");
      prev = entry.priority;
      if (entry.priority < offset_ || entry.priority > offset_ + static_cast<double>(entry.ratio))
        throw std::logic_error("camp: entry priority outside [L, L + ratio]");
      auto idx = index_.find(entry.key);
      if (idx == index_.end() || idx->second.ratio != ratio || &*idx->second.it != &entry)
        throw std::logic_error("camp: key index out of sync");
    }
    const CampPriority head{queue.entries.front().priority, ratio};
    const CampPriority heap_node = heap_.priority_of(queue.handle);
    if (heap_node.h != head.h || heap_node.ratio != head.ratio)
      throw std::logic_error("camp: heap node disagrees with queue head");
    if (!have_min || head < min_head) {
      min_head = head;
      have_min = true;
    }
  }
  if (entry_count != index_.size()) throw std::logic_error("camp: key index size mismatch");
  if (total != resident_) throw std::logic_error("camp: resident byte counter out of sync");
  if (resident_ > capacity_) throw std::logic_error("camp: resident bytes exceed capacity");
  if (have_min) {
    // for_each walks in slot order, so the first node is the heap root.
    CampPriority root{};
    bool first = true;
    heap_.for_each([&](const CampPriority& priority, std::uint64_t) {
      if (first) root = priority;
      first = false;
    });
    if (root.h != min_head.h || root.ratio != min_head.ratio)
      throw std::logic_error("camp: heap minimum disagrees with smallest head");
  }
  heap_.check_consistency();
}

}  // namespace camp
