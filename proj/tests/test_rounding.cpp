#include <cstdint>
#include <random>
#include <unordered_set>

#include "camp/rounding.hpp"
#include "doctest.h"

using namespace camp;

TEST_CASE("round_to_precision keeps the top p significant bits") {
  // Binary precision 4 worked examples.
  CHECK(round_to_precision(0b101101011, 4) == 0b101100000);  // 363 -> 352
  CHECK(round_to_precision(0b001010011, 4) == 0b001010000);  // 83 -> 80
  CHECK(round_to_precision(0b000001010, 4) == 10);           // short values pass through
  CHECK(round_to_precision(0b000000111, 4) == 7);
}

TEST_CASE("round_to_precision rejects zero and precision zero") {
  CHECK_THROWS_AS(round_to_precision(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(round_to_precision(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(round_to_precision(0, Precision::unbounded()), std::invalid_argument);
}

TEST_CASE("round_to_precision with unbounded precision is the identity") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = (rng() % 1'000'000'000) + 1;
    CHECK(round_to_precision(x, Precision::unbounded()) == x);
  }
}

TEST_CASE("rounding error bound, monotonicity, idempotence over small ranges") {
  for (std::uint32_t p = 1; p <= 8; ++p) {
    const double epsilon = std::ldexp(1.0, 1 - static_cast<int>(p));
    std::uint64_t prev_rounded = 0;
    for (std::uint64_t x = 1; x <= (1u << 14); ++x) {
      const std::uint64_t rounded = round_to_precision(x, p);
      CHECK(rounded <= x);
      CHECK(static_cast<double>(x) <= (1.0 + epsilon) * static_cast<double>(rounded));
      CHECK(rounded >= prev_rounded);  // monotone in x
      CHECK(round_to_precision(rounded, p) == rounded);
      prev_rounded = rounded;
    }
  }
}

namespace {
std::uint64_t ceil_log2(std::uint64_t n) {
  return std::has_single_bit(n) ? std::bit_width(n) - 1 : std::bit_width(n);
}
}  // namespace

TEST_CASE("distinct rounded values stay within the counting bound") {
  for (std::uint32_t p = 1; p <= 8; ++p) {
    for (std::uint64_t u : {std::uint64_t{1} << 8, std::uint64_t{1} << 12}) {
      std::unordered_set<std::uint64_t> outputs;
      for (std::uint64_t x = 1; x <= u; ++x) outputs.insert(round_to_precision(x, p));
      const std::uint64_t log_term = ceil_log2(u + 1);
      const std::uint64_t bound = (log_term >= p ? log_term - p + 1 : 1) * (std::uint64_t{1} << p);
      CHECK(outputs.size() <= bound);
    }
  }
}

TEST_CASE("integerize scales by the adaptive multiplier and rounds to nearest") {
  RatioContext ctx;
  ctx.max_size_seen = 200;
  CHECK(integerize(100, 50, ctx) == 400);  // exact
  CHECK(integerize(1, 200, ctx) == 1);     // smallest possible ratio

  ctx.max_size_seen = 10;
  CHECK(integerize(7, 3, ctx) == 23);  // 70/3 = 23.33 -> 23
}

TEST_CASE("integerize clamps zero-cost entries to ratio 1") {
  RatioContext ctx;
  ctx.max_size_seen = 1024;
  CHECK(integerize(0, 64, ctx) == 1);
}

TEST_CASE("integerize matches a 128-bit rational oracle over random triples") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200'000; ++i) {
    const std::uint64_t cost = rng() % 1'000'000'001;           // [0, 1e9]
    const std::uint64_t max_size = (rng() % (1u << 20)) + 1;    // [1, 2^20]
    const std::uint64_t size = (rng() % max_size) + 1;          // [1, max_size]
    RatioContext ctx;
    ctx.max_size_seen = max_size;

    // Round-to-nearest with ties away from zero, in 128-bit arithmetic.
    const unsigned __int128 numerator = static_cast<unsigned __int128>(cost) * max_size;
    const unsigned __int128 expected128 = (2 * numerator + size) / (2 * static_cast<unsigned __int128>(size));
    const std::uint64_t expected =
        expected128 == 0 ? 1 : static_cast<std::uint64_t>(expected128);

    CHECK(integerize(cost, size, ctx) == expected);
  }
}

TEST_CASE("rounded_ratio observes the size before scaling") {
  RatioContext ctx;
  ctx.precision = Precision::bits(4);
  // First record ever: the multiplier becomes the record's own size.
  const std::uint64_t ratio = rounded_ratio(100, 100, ctx);
  CHECK(ctx.max_size_seen == 100);
  CHECK(ratio == 96);  // integerize -> 100 = 0b1100100, top 4 bits -> 0b1100000

  RatioContext unit;
  unit.precision = Precision::bits(7);
  CHECK(rounded_ratio(1, 1, unit) == 1);
}

TEST_CASE("rounded_ratio with unbounded precision equals integerize") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t size = (rng() % 10'000) + 1;
    const std::uint64_t cost = rng() % 100'000;
    RatioContext ctx;  // unbounded by default
    ctx.observe_size(size);
    RatioContext copy = ctx;
    CHECK(rounded_ratio(cost, size, ctx) == integerize(cost, size, copy));
  }
}

TEST_CASE("max_size_seen never decreases") {
  RatioContext ctx;
  ctx.observe_size(500);
  CHECK(ctx.max_size_seen == 500);
  ctx.observe_size(100);
  CHECK(ctx.max_size_seen == 500);
  ctx.observe_size(501);
  CHECK(ctx.max_size_seen == 501);
}
