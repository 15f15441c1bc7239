#include "camp/lru_cache.hpp"

#include <stdexcept>

namespace camp {

LruCache::LruCache(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be >= 1 byte");
}

PolicyDecision LruCache::request(const TraceRecord& record) {
  validate_record(record);

  if (auto it = index_.find(record.key); it != index_.end()) {
    Entry& entry = *it->second;
    if (entry.size != record.size || entry.cost != record.cost) ++mismatch_warnings_;
    order_.splice(order_.end(), order_, it->second);  // move to tail, most recent
    return {Outcome::kHit, {}};
  }

  if (record.size > capacity_) return {Outcome::kUncacheable, {}};

  PolicyDecision decision{Outcome::kMiss, {}};
  while (capacity_ - resident_ < record.size) {
    Entry& victim = order_.front();
    resident_ -= victim.size;
    decision.evicted.push_back(std::move(victim.key));
    index_.erase(decision.evicted.back());
    order_.pop_front();
  }
  order_.push_back(Entry{record.key, record.size, record.cost});
  index_[record.key] = std::prev(order_.end());
  resident_ += record.size;
  return decision;
}

bool LruCache::contains(std::string_view key) const {
  return index_.find(key) != index_.end();
}

void LruCache::validate_invariants() const {
  std::uint64_t total = 0;
  for (const Entry& entry : order_) total += entry.size;
  if (total != resident_) throw std::logic_error("lru: resident byte counter out of sync");
  if (resident_ > capacity_) throw std::logic_error("lru: resident bytes exceed capacity");
  if (index_.size() != order_.size()) throw std::logic_error("lru: index size mismatch");
  for (auto it = order_.begin(); it != order_.end(); ++it) {
    auto found = index_.find(it->key);
    if (found == index_.end() || found->second != it)
      throw std::logic_error("lru: index entry out of sync");
  }
}

}  // namespace camp
