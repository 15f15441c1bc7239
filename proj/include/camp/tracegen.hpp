#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "camp/trace.hpp"

namespace camp {

struct FixedSetValues {
  std::vector<std::uint64_t> values;  // one drawn per key, equiprobable
};
struct ConstantValue {
  std::uint64_t value = 1;
};
struct LogUniformRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;  // inclusive
};

using CostModel = std::variant<FixedSetValues, ConstantValue, LogUniformRange>;
using SizeModel = std::variant<ConstantValue, LogUniformRange>;

// Two-bucket skewed workload: a hot fraction of the keys receives a fixed
// fraction of the requests. Per-key size and cost are drawn once and reused
// for every request to that key. Phases use disjoint key sets (keys are
// named p<phase>k<index>) and are generated independently from the seed, so
// the stream is deterministic and phases could be produced in parallel.
//
// The default size model spreads values over roughly one decade around the
// few-KB scale of social-network objects. Combined with the three-point
// cost set this yields cost-to-size ratios spanning five orders of
// magnitude while keeping the byte mass of the very top ratio band small,
// which is what drives the eviction behaviour under shifting phases.
struct WorkloadSpec {
  std::uint64_t key_count = 100'000;        // per phase
  std::uint64_t request_count = 1'000'000;  // per phase
  double hot_fraction = 0.2;
  double hot_request_fraction = 0.7;
  CostModel cost_model = FixedSetValues{{1, 100, 10'000}};
  SizeModel size_model = LogUniformRange{1'024, 12'288};
  std::uint32_t phases = 1;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

class TraceGenerator final : public TraceStream {
 public:
  explicit TraceGenerator(WorkloadSpec spec);
  bool next(TraceRecord& out) override;

 private:
  void start_phase(std::uint32_t phase);

  WorkloadSpec spec_;
  std::uint32_t phase_ = 0;
  std::uint64_t emitted_in_phase_ = 0;
  std::uint64_t hot_count_ = 0;
  std::vector<std::uint64_t> key_sizes_;
  std::vector<std::uint64_t> key_costs_;
  std::mt19937_64 request_rng_;
};

std::vector<TraceRecord> generate(const WorkloadSpec& spec);

// Total size of the key population, across all phases or for one phase.
// Key attributes are drawn independently of the request sampling, so this
// is exact for the population but slightly overestimates the unique bytes
// of a finite trace in which some cold keys are never requested; scan the
// generated trace when the exact figure matters.
std::uint64_t unique_bytes(const WorkloadSpec& spec);
std::uint64_t unique_bytes(const WorkloadSpec& spec, std::uint32_t phase);

}  // namespace camp
