#pragma once

#include <list>
#include <unordered_map>

#include "camp/policy.hpp"

namespace camp {

// Single-queue LRU over a byte budget. The head of the list is the least
// recently requested entry and the eviction victim.
class LruCache final : public EvictionPolicy {
 public:
  explicit LruCache(std::uint64_t capacity_bytes);

  PolicyDecision request(const TraceRecord& record) override;
  bool contains(std::string_view key) const override;
  std::uint64_t resident_bytes() const override { return resident_; }
  std::uint64_t capacity() const override { return capacity_; }
  std::string_view name() const override { return "lru"; }
  std::size_t live_queue_count() const override { return 1; }
  void validate_invariants() const override;

 private:
  struct Entry {
    std::string key;
    std::uint64_t size;
    std::uint64_t cost;
  };
  using EntryList = std::list<Entry>;

  std::uint64_t capacity_;
  std::uint64_t resident_ = 0;
  EntryList order_;  // head = least recent
  std::unordered_map<std::string, EntryList::iterator, StringHash, std::equal_to<>> index_;
};

}  // namespace camp
