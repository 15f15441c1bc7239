#include "camp/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "camp/camp_cache.hpp"
#include "camp/gds_cache.hpp"
#include "camp/lru_cache.hpp"
#include "camp/pooled_lru_cache.hpp"

namespace camp {

namespace {

struct KeyInfo {
  std::uint64_t size;
  std::uint32_t phase;
};

void finalize_rates(MetricsReport& report) {
  report.miss_rate = report.counted_requests == 0
                         ? 0.0
                         : static_cast<double>(report.counted_misses) /
                               static_cast<double>(report.counted_requests);
  report.cost_miss_ratio = report.counted_total_cost == 0
                               ? 0.0
                               : static_cast<double>(report.counted_miss_cost) /
                                     static_cast<double>(report.counted_total_cost);
}

}  // namespace

MetricsReport run(TraceStream& trace, EvictionPolicy& policy, const RunOptions& options) {
  if (options.sample_interval == 0) throw std::invalid_argument("sample interval must be >= 1");

  MetricsReport report;
  std::unordered_map<std::string, KeyInfo, StringHash, std::equal_to<>> seen;
  std::map<std::uint32_t, std::uint64_t> phase_bytes;  // ordered for stable output
  const double capacity = static_cast<double>(policy.capacity());

  auto take_sample = [&]() {
    OccupancySample sample;
    sample.request_index = report.total_requests;
    sample.phase_fractions.reserve(phase_bytes.size());
    for (const auto& [phase, bytes] : phase_bytes)
      sample.phase_fractions.emplace_back(phase, static_cast<double>(bytes) / capacity);
    report.occupancy_samples.push_back(std::move(sample));
  };

  TraceRecord record;
  while (trace.next(record)) {
    const auto [seen_it, cold] = seen.try_emplace(record.key, KeyInfo{record.size, record.phase});
    const PolicyDecision decision = policy.request(record);

    ++report.total_requests;
    const bool miss = decision.outcome != Outcome::kHit;
    if (cold) {
      ++report.cold_requests;
    } else {
      ++report.counted_requests;
      report.counted_total_cost += record.cost;
      if (miss) {
        ++report.counted_misses;
        report.counted_miss_cost += record.cost;
      }
    }

    if (decision.outcome == Outcome::kMiss) phase_bytes[record.phase] += record.size;
    for (const std::string& key : decision.evicted) {
      const KeyInfo& info = seen.find(key)->second;
      phase_bytes[info.phase] -= info.size;
    }

    if (options.observer) options.observer(policy, report.total_requests, record, decision);
    if (report.total_requests % options.sample_interval == 0) take_sample();
  }

  if (report.total_requests % options.sample_interval != 0) take_sample();
  report.heap_visits = policy.heap_visits();
  report.final_queue_count = policy.live_queue_count();
  finalize_rates(report);
  return report;
}

MetricsReport run(const std::vector<TraceRecord>& trace, EvictionPolicy& policy,
                  const RunOptions& options) {
  VectorTraceStream stream(trace);
  return run(stream, policy, options);
}

std::uint64_t cache_size_from_ratio(std::uint64_t unique_bytes, double ratio) {
  if (unique_bytes == 0) throw std::invalid_argument("empty trace: no unique bytes");
  if (!(ratio > 0.0)) throw std::invalid_argument("cache size ratio must be positive");
  const double exact = ratio * static_cast<double>(unique_bytes);
  return static_cast<std::uint64_t>(std::ceil(exact));
}

std::uint64_t cache_size_from_ratio(const std::vector<TraceRecord>& trace, double ratio) {
  VectorTraceStream stream(trace);
  return cache_size_from_ratio(scan_trace(stream).unique_bytes, ratio);
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kLru: return "lru";
    case PolicyKind::kPooledLru: return "pooled-lru";
    case PolicyKind::kGds: return "gds";
    case PolicyKind::kCamp: return "camp";
  }
  return "?";
}

std::optional<PolicyKind> policy_from_name(std::string_view name) {
  if (name == "lru") return PolicyKind::kLru;
  if (name == "pooled-lru") return PolicyKind::kPooledLru;
  if (name == "gds") return PolicyKind::kGds;
  if (name == "camp") return PolicyKind::kCamp;
  return std::nullopt;
}

std::unique_ptr<EvictionPolicy> make_policy(PolicyKind kind, const CacheConfig& config) {
  switch (kind) {
    case PolicyKind::kLru:
      return std::make_unique<LruCache>(config.capacity);
    case PolicyKind::kPooledLru:
      if (!config.pool_spec) throw std::invalid_argument("pooled-lru needs a pool spec");
      return std::make_unique<PooledLruCache>(config.capacity, *config.pool_spec);
    case PolicyKind::kGds:
      return std::make_unique<GdsCache>(config.capacity, config.heap_arity);
    case PolicyKind::kCamp:
      return std::make_unique<CampCache>(config.capacity, config.precision,
                                         CampCache::Options{config.heap_arity, true});
  }
  throw std::invalid_argument("unknown policy kind");
}

std::string precision_label(PolicyKind kind, Precision precision) {
  if (kind != PolicyKind::kCamp) return "-";
  if (precision.is_unbounded()) return "unbounded";
  return std::to_string(precision.bit_count());
}

namespace {

struct TraceContext {
  const std::vector<TraceRecord>* records;
  std::uint64_t unique_bytes;
  std::vector<std::uint64_t> pool_cost_totals;  // only when pooled-lru sweeps
};

std::string cell_label(const SweepCell& cell) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "cell(trace=%s policy=%s precision=%s ratio=%g)",
                cell.trace_name.c_str(), std::string(policy_name(cell.policy)).c_str(),
                precision_label(cell.policy, cell.precision).c_str(), cell.cache_ratio);
  return buffer;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.traces.empty()) throw std::invalid_argument("sweep: no traces given");
  if (spec.policies.empty()) throw std::invalid_argument("sweep: no policies given");
  if (spec.ratios.empty()) throw std::invalid_argument("sweep: no cache ratios given");
  const bool has_camp =
      std::find(spec.policies.begin(), spec.policies.end(), PolicyKind::kCamp) !=
      spec.policies.end();
  if (has_camp && spec.camp_precisions.empty())
    throw std::invalid_argument("sweep: camp requested with no precisions");

  // Per-trace pre-passes, shared across cells.
  std::vector<TraceContext> contexts;
  contexts.reserve(spec.traces.size());
  const bool has_pooled =
      std::find(spec.policies.begin(), spec.policies.end(), PolicyKind::kPooledLru) !=
      spec.policies.end();
  for (const auto& [name, records] : spec.traces) {
    TraceContext ctx;
    ctx.records = records;
    VectorTraceStream stream(*records);
    ctx.unique_bytes = scan_trace(stream).unique_bytes;
    if (ctx.unique_bytes == 0) throw std::invalid_argument("sweep: trace '" + name + "' is empty");
    if (has_pooled) {
      if (!spec.pool_spec) throw std::invalid_argument("sweep: pooled-lru needs a pool spec");
      if (spec.pool_spec->allocation == PoolAllocation::kCostProportional) {
        VectorTraceStream cost_stream(*records);
        ctx.pool_cost_totals = pool_request_cost_totals(cost_stream, *spec.pool_spec);
      }
    }
    contexts.push_back(std::move(ctx));
  }

  struct Cell {
    SweepCell id;
    const TraceContext* ctx;
  };
  std::vector<Cell> cells;
  for (std::size_t t = 0; t < spec.traces.size(); ++t) {
    for (PolicyKind policy : spec.policies) {
      const std::vector<Precision> precisions =
          policy == PolicyKind::kCamp ? spec.camp_precisions : std::vector<Precision>{Precision{}};
      for (Precision precision : precisions) {
        for (double ratio : spec.ratios) {
          cells.push_back(Cell{SweepCell{spec.traces[t].first, policy, precision, ratio},
                               &contexts[t]});
        }
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    CacheConfig config;
    config.capacity = cache_size_from_ratio(cell.ctx->unique_bytes, cell.id.cache_ratio);
    config.precision = cell.id.precision;
    config.heap_arity = spec.heap_arity;
    if (cell.id.policy == PolicyKind::kPooledLru) {
      const auto* totals = spec.pool_spec->allocation == PoolAllocation::kCostProportional
                               ? &cell.ctx->pool_cost_totals
                               : nullptr;
      config.pool_spec = resolve_pool_budgets(*spec.pool_spec, config.capacity, totals);
    }
    std::unique_ptr<EvictionPolicy> policy = make_policy(cell.id.policy, config);
    rows[i] = SweepRow{cell.id, run(*cell.ctx->records, *policy, spec.run_options)};
  };

  const unsigned jobs = std::max(1u, spec.jobs);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        run_cell(i);
      } catch (const std::exception& e) {
        throw std::runtime_error(cell_label(cells[i].id) + ": " + e.what());
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error.empty()) return;
        }
        try {
          run_cell(i);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) first_error = cell_label(cells[i].id) + ": " + e.what();
        }
      }
    };
    std::vector<std::thread> threads;
    const unsigned thread_count = std::min<std::size_t>(jobs, cells.size());
    threads.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);
  }
  return rows;
}

namespace {

std::string format_fraction(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string format_ratio(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", value);
  return buffer;
}

}  // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "policy,precision,cache_ratio,trace,miss_rate,cost_miss_ratio,heap_visits,queues\n";
  for (const SweepRow& row : rows) {
    out << policy_name(row.cell.policy) << ','
        << precision_label(row.cell.policy, row.cell.precision) << ','
        << format_ratio(row.cell.cache_ratio) << ',' << row.cell.trace_name << ','
        << format_fraction(row.report.miss_rate) << ','
        << format_fraction(row.report.cost_miss_ratio) << ',' << row.report.heap_visits << ','
        << row.report.final_queue_count << '\n';
  }
}

void write_metrics_csv_header(std::ostream& out) {
  out << "policy,precision,cache_ratio,trace,total_requests,cold_requests,counted_requests,"
         "counted_misses,miss_rate,counted_miss_cost,counted_total_cost,cost_miss_ratio,"
         "heap_visits,queues\n";
}

void write_metrics_csv_row(const SweepCell& cell, const MetricsReport& report, std::ostream& out) {
  out << policy_name(cell.policy) << ',' << precision_label(cell.policy, cell.precision) << ','
      << format_ratio(cell.cache_ratio) << ',' << cell.trace_name << ',' << report.total_requests
      << ',' << report.cold_requests << ',' << report.counted_requests << ','
      << report.counted_misses << ',' << format_fraction(report.miss_rate) << ','
      << report.counted_miss_cost << ',' << report.counted_total_cost << ','
      << format_fraction(report.cost_miss_ratio) << ',' << report.heap_visits << ','
      << report.final_queue_count << '\n';
}

void write_occupancy_csv(const MetricsReport& report, std::ostream& out) {
  out << "request_index,phase,fraction\n";
  for (const OccupancySample& sample : report.occupancy_samples)
    for (const auto& [phase, fraction] : sample.phase_fractions)
      out << sample.request_index << ',' << phase << ',' << format_fraction(fraction) << '\n';
}

}  // namespace camp
