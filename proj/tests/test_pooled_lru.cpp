#include <numeric>
#include <random>

#include "camp/pooled_lru_cache.hpp"
#include "doctest.h"

using namespace camp;

namespace {

TraceRecord rec(std::string key, std::uint64_t size, std::uint64_t cost) {
  return TraceRecord{std::move(key), size, cost, 0};
}

PoolSpec three_cost_spec(PoolAllocation allocation) {
  PoolSpec spec;
  spec.boundaries = {1, 100, 10'000};
  spec.allocation = allocation;
  return spec;
}

}  // namespace

TEST_CASE("uniform allocation splits capacity evenly") {
  const PoolSpec spec = resolve_pool_budgets(three_cost_spec(PoolAllocation::kUniform), 300);
  CHECK(spec.budgets == std::vector<std::uint64_t>{100, 100, 100});
}

TEST_CASE("cost-proportional allocation follows per-pool request cost totals") {
  const std::vector<std::uint64_t> totals{10, 10, 80};
  const PoolSpec spec =
      resolve_pool_budgets(three_cost_spec(PoolAllocation::kCostProportional), 100, &totals);
  CHECK(spec.budgets == std::vector<std::uint64_t>{10, 10, 80});
}

TEST_CASE("range-low allocation is proportional to each range's lowest cost") {
  const PoolSpec spec =
      resolve_pool_budgets(three_cost_spec(PoolAllocation::kRangeLowProportional), 10'101);
  CHECK(spec.budgets == std::vector<std::uint64_t>{1, 100, 10'000});
}

TEST_CASE("budgets always sum to capacity and leave no pool empty") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 200; ++i) {
    PoolSpec spec = three_cost_spec(PoolAllocation::kRangeLowProportional);
    const std::uint64_t capacity = (rng() % 100'000) + spec.boundaries.size();
    const PoolSpec resolved = resolve_pool_budgets(spec, capacity);
    CHECK(std::accumulate(resolved.budgets.begin(), resolved.budgets.end(), std::uint64_t{0}) ==
          capacity);
    for (std::uint64_t budget : resolved.budgets) CHECK(budget >= 1);
  }
}

TEST_CASE("rounding remainder goes to the most expensive pool") {
  const PoolSpec spec = resolve_pool_budgets(three_cost_spec(PoolAllocation::kUniform), 301);
  CHECK(spec.budgets == std::vector<std::uint64_t>{100, 100, 101});
}

TEST_CASE("costs route to their pool, out-of-range costs to the last") {
  const PoolSpec spec = three_cost_spec(PoolAllocation::kUniform);
  CHECK(spec.pool_for_cost(1) == 0);
  CHECK(spec.pool_for_cost(99) == 0);
  CHECK(spec.pool_for_cost(100) == 1);
  CHECK(spec.pool_for_cost(9'999) == 1);
  CHECK(spec.pool_for_cost(10'000) == 2);
  CHECK(spec.pool_for_cost(1'000'000) == 2);  // open-ended top range
  CHECK(spec.pool_for_cost(0) == 2);          // below every range
}

TEST_CASE("pool boundaries must ascend") {
  PoolSpec spec;
  spec.boundaries = {1, 1, 10};
  CHECK_THROWS_AS(resolve_pool_budgets(spec, 100), std::invalid_argument);
}

TEST_CASE("an item larger than its pool budget is uncacheable") {
  const PoolSpec spec = resolve_pool_budgets(three_cost_spec(PoolAllocation::kUniform), 300);
  PooledLruCache cache(300, spec);
  // Fits in the cache as a whole but not in its 100-byte pool.
  auto decision = cache.request(rec("big", 150, 1));
  CHECK(decision.outcome == Outcome::kUncacheable);
  CHECK_FALSE(cache.contains("big"));
}

TEST_CASE("evictions never cross pools") {
  const PoolSpec spec = resolve_pool_budgets(three_cost_spec(PoolAllocation::kUniform), 30);
  PooledLruCache cache(30, spec);
  cache.request(rec("cheap1", 10, 1));
  cache.request(rec("mid1", 10, 100));
  cache.request(rec("dear1", 10, 10'000));
  // A second cheap item displaces only the cheap pool's entry.
  auto decision = cache.request(rec("cheap2", 10, 1));
  CHECK(decision.evicted == std::vector<std::string>{"cheap1"});
  CHECK(cache.contains("mid1"));
  CHECK(cache.contains("dear1"));
  cache.validate_invariants();
}

TEST_CASE("resident bytes aggregate across pools and respect capacity") {
  std::mt19937_64 rng(41);
  const PoolSpec spec = resolve_pool_budgets(three_cost_spec(PoolAllocation::kUniform), 120);
  PooledLruCache cache(120, spec);
  const std::uint64_t costs[] = {1, 100, 10'000};
  std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>> attrs;
  for (int i = 0; i < 3'000; ++i) {
    const std::string key = "k" + std::to_string(rng() % 60);
    auto [it, fresh] = attrs.try_emplace(key, (rng() % 20) + 1, costs[rng() % 3]);
    cache.request(rec(key, it->second.first, it->second.second));
    CHECK(cache.resident_bytes() <= cache.capacity());
  }
  cache.validate_invariants();
}

TEST_CASE("a single pool behaves like plain LRU") {
  PoolSpec spec;
  spec.boundaries = {1};
  const PoolSpec resolved = resolve_pool_budgets(spec, 2);
  PooledLruCache cache(2, resolved);
  cache.request(rec("a", 1, 5));
  cache.request(rec("b", 1, 500));
  CHECK(cache.request(rec("a", 1, 5)).outcome == Outcome::kHit);
  CHECK(cache.request(rec("c", 1, 5)).evicted == std::vector<std::string>{"b"});
}
