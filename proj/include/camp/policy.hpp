#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "camp/pool_spec.hpp"
#include "camp/trace.hpp"

namespace camp {

enum class Outcome { kHit, kMiss, kUncacheable };

struct PolicyDecision {
  Outcome outcome = Outcome::kMiss;
  std::vector<std::string> evicted;  // in eviction order; empty unless a miss evicted
};

// Number of significant binary digits kept when rounding a cost-to-size
// ratio. Unbounded means the integerized ratio is used as-is.
class Precision {
 public:
  constexpr Precision() = default;  // unbounded
  static constexpr Precision unbounded() { return Precision{}; }
  static Precision bits(std::uint32_t p) {
    if (p == 0) throw std::invalid_argument("precision must be >= 1");
    Precision out;
    out.bits_ = p;
    return out;
  }
  constexpr bool is_unbounded() const { return bits_ == 0; }
  constexpr std::uint32_t bit_count() const { return bits_; }
  friend constexpr bool operator==(Precision, Precision) = default;

 private:
  std::uint32_t bits_ = 0;
};

struct CacheConfig {
  std::uint64_t capacity = 0;                // bytes, >= 1
  Precision precision = Precision::bits(5);  // CAMP only
  std::optional<PoolSpec> pool_spec;         // Pooled LRU only, must be resolved
  unsigned heap_arity = 8;                   // CAMP and GDS
};

// Transparent hashing so string keys can be probed with string_view.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

// Contract every eviction policy implements. A policy instance is
// single-threaded; distinct instances share nothing and may run on distinct
// threads.
class EvictionPolicy {
 public:
  virtual ~EvictionPolicy() = default;

  // Processes one request. A resident key is a Hit (never evicts); a missing
  // key that fits is a Miss that inserts the entry, evicting as needed; a
  // record larger than the relevant capacity is Uncacheable and leaves the
  // cache untouched. Throws std::invalid_argument on a malformed record.
  virtual PolicyDecision request(const TraceRecord& record) = 0;

  virtual bool contains(std::string_view key) const = 0;
  virtual std::uint64_t resident_bytes() const = 0;
  virtual std::uint64_t capacity() const = 0;
  virtual std::string_view name() const = 0;

  // Cumulative heap-node visits (0 for policies without a heap).
  virtual std::uint64_t heap_visits() const { return 0; }
  // Number of LRU queues currently maintained.
  virtual std::size_t live_queue_count() const { return 0; }

  // Full-state consistency scan; throws std::logic_error on violation.
  // Intended for tests and debugging, not the hot path.
  virtual void validate_invariants() const {}

  // Count of hits whose record disagreed with the resident entry's size or
  // cost (the original values are retained; valid traces never trip this).
  virtual std::uint64_t mismatch_warnings() const { return mismatch_warnings_; }

 protected:
  std::uint64_t mismatch_warnings_ = 0;
};

}  // namespace camp
