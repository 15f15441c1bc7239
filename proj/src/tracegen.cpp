#include "camp/tracegen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace camp {

namespace {

// Draw helpers avoid std::uniform_*_distribution so the generated stream
// does not depend on the standard library's distribution internals.
std::uint64_t u64_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t bound = n == 0 ? 0 : (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= bound);
  return r % n;
}

double real01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t draw_log_uniform(std::mt19937_64& rng, const LogUniformRange& range) {
  if (range.lo == range.hi) return range.lo;
  const double lo = std::log(static_cast<double>(range.lo));
  const double hi = std::log(static_cast<double>(range.hi));
  const double value = std::exp(lo + real01(rng) * (hi - lo));
  const auto rounded = static_cast<std::uint64_t>(std::llround(value));
  return std::clamp(rounded, range.lo, range.hi);
}

std::uint64_t draw_cost(std::mt19937_64& rng, const CostModel& model) {
  return std::visit(
      [&](const auto& m) -> std::uint64_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, FixedSetValues>) {
          return m.values[u64_below(rng, m.values.size())];
        } else if constexpr (std::is_same_v<T, ConstantValue>) {
          return m.value;
        } else {
          return draw_log_uniform(rng, m);
        }
      },
      model);
}

std::uint64_t draw_size(std::mt19937_64& rng, const SizeModel& model) {
  return std::visit(
      [&](const auto& m) -> std::uint64_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantValue>) {
          return m.value;
        } else {
          return draw_log_uniform(rng, m);
        }
      },
      model);
}

std::mt19937_64 phase_rng(std::uint64_t seed, std::uint32_t phase, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    phase, stream};
  return std::mt19937_64(seq);
}

void draw_key_attributes(const WorkloadSpec& spec, std::uint32_t phase,
                         std::vector<std::uint64_t>& sizes, std::vector<std::uint64_t>& costs) {
  std::mt19937_64 rng = phase_rng(spec.seed, phase, 0);
  sizes.resize(spec.key_count);
  costs.resize(spec.key_count);
  for (std::uint64_t i = 0; i < spec.key_count; ++i) {
    sizes[i] = draw_size(rng, spec.size_model);
    costs[i] = draw_cost(rng, spec.cost_model);
  }
}

std::string format_key(std::uint32_t phase, std::uint64_t index) {
  char buffer[48];
  const int n = std::snprintf(buffer, sizeof buffer, "p%uk%llu", phase,
                              static_cast<unsigned long long>(index));
  return std::string(buffer, static_cast<std::size_t>(n));
}

}  // namespace

void WorkloadSpec::validate() const {
  if (key_count == 0) throw std::invalid_argument("key_count must be >= 1");
  if (request_count == 0) throw std::invalid_argument("request_count must be >= 1");
  if (phases == 0) throw std::invalid_argument("phases must be >= 1");
  if (!(hot_fraction > 0.0 && hot_fraction < 1.0))
    throw std::invalid_argument("hot_fraction must lie in (0, 1)");
  if (!(hot_request_fraction > 0.0 && hot_request_fraction < 1.0))
    throw std::invalid_argument("hot_request_fraction must lie in (0, 1)");
  if (key_count < 2) throw std::invalid_argument("key_count must allow hot and cold buckets");

  if (const auto* fixed = std::get_if<FixedSetValues>(&cost_model)) {
    if (fixed->values.empty()) throw std::invalid_argument("fixed cost set must be non-empty");
    for (std::uint64_t v : fixed->values)
      if (v > kMaxRecordCost) throw std::invalid_argument("cost exceeds the supported maximum");
  } else if (const auto* constant = std::get_if<ConstantValue>(&cost_model)) {
    if (constant->value > kMaxRecordCost)
      throw std::invalid_argument("cost exceeds the supported maximum");
  } else if (const auto* range = std::get_if<LogUniformRange>(&cost_model)) {
    if (range->lo == 0 || range->lo > range->hi)
      throw std::invalid_argument("degenerate cost range");
    if (range->hi > kMaxRecordCost)
      throw std::invalid_argument("cost exceeds the supported maximum");
  }

  if (const auto* constant = std::get_if<ConstantValue>(&size_model)) {
    if (constant->value == 0 || constant->value > kMaxRecordSize)
      throw std::invalid_argument("size outside the supported range");
  } else if (const auto* range = std::get_if<LogUniformRange>(&size_model)) {
    if (range->lo == 0 || range->lo > range->hi)
      throw std::invalid_argument("degenerate size range");
    if (range->hi > kMaxRecordSize)
      throw std::invalid_argument("size exceeds the supported maximum");
  }
}

TraceGenerator::TraceGenerator(WorkloadSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  start_phase(0);
}

void TraceGenerator::start_phase(std::uint32_t phase) {
  phase_ = phase;
  emitted_in_phase_ = 0;
  draw_key_attributes(spec_, phase, key_sizes_, key_costs_);
  hot_count_ = std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::llround(spec_.hot_fraction * static_cast<double>(spec_.key_count))),
      1, spec_.key_count - 1);
  request_rng_ = phase_rng(spec_.seed, phase, 1);
}

bool TraceGenerator::next(TraceRecord& out) {
  if (emitted_in_phase_ >= spec_.request_count) {
    if (phase_ + 1 >= spec_.phases) return false;
    start_phase(phase_ + 1);
  }
  const bool hot = real01(request_rng_) < spec_.hot_request_fraction;
  const std::uint64_t index =
      hot ? u64_below(request_rng_, hot_count_)
          : hot_count_ + u64_below(request_rng_, spec_.key_count - hot_count_);
  out.key = format_key(phase_, index);
  out.size = key_sizes_[index];
  out.cost = key_costs_[index];
  out.phase = phase_;
  ++emitted_in_phase_;
  return true;
}

std::vector<TraceRecord> generate(const WorkloadSpec& spec) {
  TraceGenerator gen(spec);
  std::vector<TraceRecord> records;
  records.reserve(spec.request_count * spec.phases);
  TraceRecord record;
  while (gen.next(record)) records.push_back(record);
  return records;
}

std::uint64_t unique_bytes(const WorkloadSpec& spec, std::uint32_t phase) {
  spec.validate();
  if (phase >= spec.phases) throw std::invalid_argument("phase out of range");
  std::vector<std::uint64_t> sizes, costs;
  draw_key_attributes(spec, phase, sizes, costs);
  std::uint64_t total = 0;
  for (std::uint64_t s : sizes) total += s;
  return total;
}

std::uint64_t unique_bytes(const WorkloadSpec& spec) {
  spec.validate();
  std::uint64_t total = 0;
  for (std::uint32_t phase = 0; phase < spec.phases; ++phase) total += unique_bytes(spec, phase);
  return total;
}

}  // namespace camp
