#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "camp/policy.hpp"
#include "camp/trace.hpp"

namespace camp {

struct OccupancySample {
  std::uint64_t request_index = 0;  // requests processed when the sample was taken
  // phase -> resident bytes of that phase's keys divided by capacity,
  // reported for every phase seen so far (including phases back at zero).
  std::vector<std::pair<std::uint32_t, double>> phase_fractions;
};

// Metrics for one trace replay. Cold requests (the first request to a key
// in the trace) are excluded from both the miss rate and the cost-miss
// ratio; an uncacheable request counts as a miss.
struct MetricsReport {
  std::uint64_t total_requests = 0;
  std::uint64_t cold_requests = 0;
  std::uint64_t counted_requests = 0;
  std::uint64_t counted_misses = 0;
  double miss_rate = 0;  // counted_misses / counted_requests
  std::uint64_t counted_miss_cost = 0;
  std::uint64_t counted_total_cost = 0;
  double cost_miss_ratio = 0;  // counted_miss_cost / counted_total_cost
  std::uint64_t heap_visits = 0;
  std::size_t final_queue_count = 0;
  std::vector<OccupancySample> occupancy_samples;
};

struct RunOptions {
  std::uint64_t sample_interval = 10'000;  // requests between occupancy samples
  // Optional per-request observer, invoked after every decision.
  std::function<void(const EvictionPolicy&, std::uint64_t, const TraceRecord&,
                     const PolicyDecision&)>
      observer;
};

MetricsReport run(TraceStream& trace, EvictionPolicy& policy, const RunOptions& options = {});
MetricsReport run(const std::vector<TraceRecord>& trace, EvictionPolicy& policy,
                  const RunOptions& options = {});

// capacity = ceil(ratio * unique bytes). Ratios above 1 are allowed for
// headroom studies.
std::uint64_t cache_size_from_ratio(std::uint64_t unique_bytes, double ratio);
std::uint64_t cache_size_from_ratio(const std::vector<TraceRecord>& trace, double ratio);

enum class PolicyKind { kLru, kPooledLru, kGds, kCamp };

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> policy_from_name(std::string_view name);
std::unique_ptr<EvictionPolicy> make_policy(PolicyKind kind, const CacheConfig& config);

// "5" or "unbounded" for CAMP cells, "-" for policies without a precision.
std::string precision_label(PolicyKind kind, Precision precision);

struct SweepCell {
  std::string trace_name;
  PolicyKind policy = PolicyKind::kLru;
  Precision precision;  // meaningful for CAMP cells only
  double cache_ratio = 0;
};

struct SweepRow {
  SweepCell cell;
  MetricsReport report;
};

// Cartesian grid over traces x policies x ratios (x precisions for CAMP).
// Each cell runs a fresh policy; cells share nothing mutable, so they can
// execute on several threads, and every report is independent of cell
// order. A failing cell aborts the sweep with the cell identity in the
// error message.
struct SweepSpec {
  std::vector<std::pair<std::string, const std::vector<TraceRecord>*>> traces;
  std::vector<PolicyKind> policies;
  std::vector<double> ratios;
  std::vector<Precision> camp_precisions = {Precision::bits(5)};
  std::optional<PoolSpec> pool_spec;  // unresolved; budgets derived per cell
  unsigned heap_arity = 8;
  unsigned jobs = 1;
  RunOptions run_options;
};

std::vector<SweepRow> sweep(const SweepSpec& spec);

// CSV emission. The sweep format is one row per cell:
//   policy,precision,cache_ratio,trace,miss_rate,cost_miss_ratio,heap_visits,queues
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
// Single-run format: the full MetricsReport as one row.
void write_metrics_csv_header(std::ostream& out);
void write_metrics_csv_row(const SweepCell& cell, const MetricsReport& report, std::ostream& out);
// Occupancy time series: request_index,phase,fraction.
void write_occupancy_csv(const MetricsReport& report, std::ostream& out);

}  // namespace camp
