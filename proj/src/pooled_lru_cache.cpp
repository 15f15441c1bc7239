#include "camp/pooled_lru_cache.hpp"

#include <numeric>
#include <stdexcept>

namespace camp {

PooledLruCache::PooledLruCache(std::uint64_t capacity_bytes, PoolSpec spec)
    : capacity_(capacity_bytes), spec_(std::move(spec)) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be >= 1 byte");
  if (!spec_.resolved() || spec_.budgets.size() != spec_.boundaries.size())
    throw std::invalid_argument("pooled lru needs a resolved pool spec");
  const std::uint64_t total =
      std::accumulate(spec_.budgets.begin(), spec_.budgets.end(), std::uint64_t{0});
  if (total != capacity_)
    throw std::invalid_argument("pool budgets must sum to the cache capacity");
  pools_.reserve(spec_.budgets.size());
  for (std::uint64_t budget : spec_.budgets) pools_.emplace_back(budget);
}

PolicyDecision PooledLruCache::request(const TraceRecord& record) {
  validate_record(record);
  return pools_[spec_.pool_for_cost(record.cost)].request(record);
}

bool PooledLruCache::contains(std::string_view key) const {
  for (const LruCache& pool : pools_)
    if (pool.contains(key)) return true;
  return false;
}

std::uint64_t PooledLruCache::resident_bytes() const {
  std::uint64_t total = 0;
  for (const LruCache& pool : pools_) total += pool.resident_bytes();
  return total;
}

std::uint64_t PooledLruCache::mismatch_warnings() const {
  std::uint64_t total = 0;
  for (const LruCache& pool : pools_) total += pool.mismatch_warnings();
  return total;
}

void PooledLruCache::validate_invariants() const {
  for (const LruCache& pool : pools_) pool.validate_invariants();
  if (resident_bytes() > capacity_)
    throw std::logic_error("pooled-lru: resident bytes exceed capacity");
}

}  // namespace camp
