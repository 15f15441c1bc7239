#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "camp/policy.hpp"

namespace camp {

// Keeps only the p most significant bits of x, zeroing everything below
// them. Values of at most p significant bits pass through unchanged. The
// relative error is bounded: x_bar <= x <= (1 + 2^(1-p)) * x_bar.
inline std::uint64_t round_to_precision(std::uint64_t x, std::uint32_t p) {
  if (x == 0) throw std::invalid_argument("round_to_precision: x must be >= 1");
  if (p == 0) throw std::invalid_argument("round_to_precision: p must be >= 1");
  const unsigned b = std::bit_width(x);
  if (b <= p) return x;
  return x & ~((std::uint64_t{1} << (b - p)) - 1);
}

inline std::uint64_t round_to_precision(std::uint64_t x, Precision p) {
  if (p.is_unbounded()) {
    if (x == 0) throw std::invalid_argument("round_to_precision: x must be >= 1");
    return x;
  }
  return round_to_precision(x, p.bit_count());
}

// Mutable per-cache scaling state. max_size_seen is the adaptive multiplier
// that turns fractional cost-to-size ratios into integers; it never
// decreases, and growing it does not retroactively rescale ratios already
// assigned to resident entries.
struct RatioContext {
  std::uint64_t max_size_seen = 1;
  Precision precision = Precision::unbounded();

  void observe_size(std::uint64_t size) {
    if (size > max_size_seen) max_size_seen = size;
  }
};

// Integer cost-to-size ratio: cost * max_size_seen / size rounded to the
// nearest integer (ties away from zero), clamped to >= 1 so zero-cost
// entries land in the lowest-priority queue.
inline std::uint64_t integerize(std::uint64_t cost, std::uint64_t size, const RatioContext& ctx) {
  if (size == 0) throw std::invalid_argument("integerize: size must be >= 1");
  // Callers observe the size first, so max_size_seen >= size and the
  // product stays below 2^60 within the trace-load limits.
  const std::uint64_t scaled = cost * ctx.max_size_seen;
  const std::uint64_t nearest = (scaled + size / 2) / size;
  return nearest == 0 ? 1 : nearest;
}

inline std::uint64_t rounded_ratio(std::uint64_t cost, std::uint64_t size, RatioContext& ctx) {
  ctx.observe_size(size);
  return round_to_precision(integerize(cost, size, ctx), ctx.precision);
}

inline std::uint64_t rounded_ratio(const TraceRecord& record, RatioContext& ctx) {
  return rounded_ratio(record.cost, record.size, ctx);
}

}  // namespace camp
