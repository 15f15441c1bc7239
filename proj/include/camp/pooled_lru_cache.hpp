#pragma once

#include <vector>

#include "camp/lru_cache.hpp"
#include "camp/policy.hpp"
#include "camp/pool_spec.hpp"

namespace camp {

// Statically partitioned memory: one private LRU per cost class. Requests
// are routed to their cost pool and never evict across pools; an item larger
// than its pool's budget is uncacheable even when the cache as a whole could
// hold it.
class PooledLruCache final : public EvictionPolicy {
 public:
  // spec must be resolved (budgets summing to capacity_bytes).
  PooledLruCache(std::uint64_t capacity_bytes, PoolSpec spec);

  PolicyDecision request(const TraceRecord& record) override;
  bool contains(std::string_view key) const override;
  std::uint64_t resident_bytes() const override;
  std::uint64_t capacity() const override { return capacity_; }
  std::string_view name() const override { return "pooled-lru"; }
  std::size_t live_queue_count() const override { return pools_.size(); }
  std::uint64_t mismatch_warnings() const override;
  void validate_invariants() const override;

  const PoolSpec& spec() const { return spec_; }
  const LruCache& pool(std::size_t i) const { return pools_[i]; }

 private:
  std::uint64_t capacity_;
  PoolSpec spec_;
  std::vector<LruCache> pools_;
};

}  // namespace camp
