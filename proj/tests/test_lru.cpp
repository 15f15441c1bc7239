#include <deque>
#include <random>
#include <string>
#include <unordered_map>

#include "camp/lru_cache.hpp"
#include "doctest.h"

using namespace camp;

namespace {

TraceRecord rec(std::string key, std::uint64_t size, std::uint64_t cost = 1,
                std::uint32_t phase = 0) {
  return TraceRecord{std::move(key), size, cost, phase};
}

}  // namespace

TEST_CASE("an empty cache misses, then hits on the repeat") {
  LruCache cache(100);
  auto first = cache.request(rec("a", 10, 5));
  CHECK(first.outcome == Outcome::kMiss);
  CHECK(first.evicted.empty());

  auto second = cache.request(rec("a", 10, 5));
  CHECK(second.outcome == Outcome::kHit);
  CHECK(second.evicted.empty());
}

TEST_CASE("exact displacement evicts the resident entry") {
  LruCache cache(10);
  cache.request(rec("a", 10));
  auto decision = cache.request(rec("b", 10));
  CHECK(decision.outcome == Outcome::kMiss);
  CHECK(decision.evicted == std::vector<std::string>{"a"});
  CHECK(cache.contains("b"));
  CHECK_FALSE(cache.contains("a"));
}

TEST_CASE("hits refresh recency") {
  // Two equal-size slots: after [a, b, a], inserting c evicts b.
  LruCache cache(2);
  cache.request(rec("a", 1));
  cache.request(rec("b", 1));
  CHECK(cache.request(rec("a", 1)).outcome == Outcome::kHit);
  auto decision = cache.request(rec("c", 1));
  CHECK(decision.evicted == std::vector<std::string>{"b"});
  CHECK(cache.contains("a"));
}

TEST_CASE("hits never evict") {
  LruCache cache(3);
  cache.request(rec("a", 1));
  cache.request(rec("b", 1));
  cache.request(rec("c", 1));
  for (const char* key : {"a", "b", "c", "b", "a"}) {
    auto decision = cache.request(rec(key, 1));
    CHECK(decision.outcome == Outcome::kHit);
    CHECK(decision.evicted.empty());
  }
}

TEST_CASE("items larger than capacity are uncacheable") {
  LruCache cache(10);
  cache.request(rec("a", 10));
  auto decision = cache.request(rec("big", 11));
  CHECK(decision.outcome == Outcome::kUncacheable);
  CHECK(decision.evicted.empty());
  CHECK_FALSE(cache.contains("big"));
  CHECK(cache.contains("a"));  // nothing was displaced
}

TEST_CASE("malformed records are rejected") {
  LruCache cache(10);
  CHECK_THROWS_AS(cache.request(rec("a", 0)), std::invalid_argument);
  CHECK_THROWS_AS(cache.request(rec("", 1)), std::invalid_argument);
}

TEST_CASE("a size-mismatched re-request hits and keeps the original entry") {
  LruCache cache(10);
  cache.request(rec("a", 4, 7));
  auto decision = cache.request(rec("a", 6, 7));
  CHECK(decision.outcome == Outcome::kHit);
  CHECK(cache.resident_bytes() == 4);
  CHECK(cache.mismatch_warnings() == 1);
}

TEST_CASE("fresh policy state") {
  LruCache cache(10);
  CHECK(cache.resident_bytes() == 0);
  CHECK_FALSE(cache.contains("anything"));
}

TEST_CASE("randomized traces match a recency shadow model") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    const std::uint64_t capacity = (rng() % 300) + 20;
    LruCache cache(capacity);

    // Shadow model: a recency deque plus byte counter, evicting from the
    // least recent side.
    std::deque<std::string> shadow_order;
    std::unordered_map<std::string, std::uint64_t> shadow_sizes;
    std::uint64_t shadow_bytes = 0;

    std::unordered_map<std::string, std::uint64_t> key_sizes;
    for (int i = 0; i < 2'000; ++i) {
      const std::string key = "k" + std::to_string(rng() % 40);
      std::uint64_t size = (rng() % 50) + 1;
      if (auto it = key_sizes.find(key); it != key_sizes.end()) size = it->second;
      key_sizes[key] = size;

      auto decision = cache.request(rec(key, size));

      std::vector<std::string> expected_evicted;
      Outcome expected;
      if (shadow_sizes.count(key)) {
        expected = Outcome::kHit;
        shadow_order.erase(std::find(shadow_order.begin(), shadow_order.end(), key));
        shadow_order.push_back(key);
      } else if (size > capacity) {
        expected = Outcome::kUncacheable;
      } else {
        expected = Outcome::kMiss;
        while (capacity - shadow_bytes < size) {
          const std::string victim = shadow_order.front();
          shadow_order.pop_front();
          shadow_bytes -= shadow_sizes[victim];
          shadow_sizes.erase(victim);
          expected_evicted.push_back(victim);
        }
        shadow_order.push_back(key);
        shadow_sizes[key] = size;
        shadow_bytes += size;
      }

      REQUIRE(decision.outcome == expected);
      REQUIRE(decision.evicted == expected_evicted);
      REQUIRE(cache.resident_bytes() == shadow_bytes);
      if (i % 128 == 0) cache.validate_invariants();
    }
    cache.validate_invariants();
  }
}
