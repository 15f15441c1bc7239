// Command-line front end: generate synthetic traces, replay one
// trace/policy pair, or sweep a grid of configurations to CSV.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "camp/camp_cache.hpp"
#include "camp/simulator.hpp"
#include "camp/tracegen.hpp"
#include "json.hpp"

namespace {

using namespace camp;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& csv, const char* what) {
  std::vector<std::uint64_t> out;
  for (const std::string& item : split_list(csv)) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError(std::string(what) + ": bad integer '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_ratio_list(const std::string& csv) {
  std::vector<double> out;
  for (const std::string& item : split_list(csv)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--ratios: bad number '" + item + "'");
    }
  }
  return out;
}

Precision parse_precision(const std::string& text) {
  if (text == "unbounded" || text == "inf") return Precision::unbounded();
  try {
    return Precision::bits(static_cast<std::uint32_t>(std::stoul(text)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--precision: expected a positive integer or 'unbounded'");
  }
}

CostModel parse_cost_model(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "fixed") return FixedSetValues{parse_u64_list(args, "--cost-model fixed")};
  if (kind == "const") return ConstantValue{std::stoull(args)};
  if (kind == "loguniform") {
    const auto range = parse_u64_list(args, "--cost-model loguniform");
    if (range.size() != 2) throw CLI::ValidationError("--cost-model loguniform needs lo,hi");
    return LogUniformRange{range[0], range[1]};
  }
  throw CLI::ValidationError("--cost-model: expected fixed:...|const:v|loguniform:lo,hi");
}

SizeModel parse_size_model(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "const") return ConstantValue{std::stoull(args)};
  if (kind == "loguniform") {
    const auto range = parse_u64_list(args, "--size-model loguniform");
    if (range.size() != 2) throw CLI::ValidationError("--size-model loguniform needs lo,hi");
    return LogUniformRange{range[0], range[1]};
  }
  throw CLI::ValidationError("--size-model: expected const:v|loguniform:lo,hi");
}

std::string describe_cost_model(const CostModel& model) {
  if (const auto* fixed = std::get_if<FixedSetValues>(&model)) {
    std::string out = "fixed:";
    for (std::size_t i = 0; i < fixed->values.size(); ++i)
      out += (i ? "," : "") + std::to_string(fixed->values[i]);
    return out;
  }
  if (const auto* constant = std::get_if<ConstantValue>(&model))
    return "const:" + std::to_string(constant->value);
  const auto& range = std::get<LogUniformRange>(model);
  return "loguniform:" + std::to_string(range.lo) + "," + std::to_string(range.hi);
}

std::string describe_size_model(const SizeModel& model) {
  if (const auto* constant = std::get_if<ConstantValue>(&model))
    return "const:" + std::to_string(constant->value);
  const auto& range = std::get<LogUniformRange>(model);
  return "loguniform:" + std::to_string(range.lo) + "," + std::to_string(range.hi);
}

// Preset workloads; every field stays overridable by flags.
WorkloadSpec preset_spec(const std::string& name) {
  WorkloadSpec spec;  // defaults match the three-cost family
  if (name == "three-cost") return spec;
  if (name == "evolving10") {
    spec.phases = 10;
    return spec;
  }
  if (name == "const-cost") {
    spec.cost_model = ConstantValue{1};
    return spec;
  }
  if (name == "equi-size") {
    spec.size_model = ConstantValue{1024};
    spec.cost_model = LogUniformRange{1, 10'000};
    return spec;
  }
  throw CLI::ValidationError("--spec: unknown preset '" + name + "'");
}

PoolAllocation parse_pool_alloc(const std::string& text) {
  if (text == "uniform") return PoolAllocation::kUniform;
  if (text == "cost-proportional") return PoolAllocation::kCostProportional;
  if (text == "range-low-proportional") return PoolAllocation::kRangeLowProportional;
  throw CLI::ValidationError(
      "--pool-alloc: expected uniform|cost-proportional|range-low-proportional");
}

std::string pool_alloc_name(PoolAllocation alloc) {
  switch (alloc) {
    case PoolAllocation::kUniform: return "uniform";
    case PoolAllocation::kCostProportional: return "cost-proportional";
    case PoolAllocation::kRangeLowProportional: return "range-low-proportional";
  }
  return "?";
}

PoolSpec load_pool_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pool spec file " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  PoolSpec spec;
  spec.boundaries = doc.at("boundaries").get<std::vector<std::uint64_t>>();
  spec.allocation = parse_pool_alloc(doc.value("allocation", "uniform"));
  return spec;
}

void emit_plots(const std::string& csv, const std::string& occupancy,
                const std::string& script_override) {
  namespace fs = std::filesystem;
  fs::path script = script_override;
  if (script.empty()) {
    std::error_code ec;
    const fs::path self = fs::read_symlink("/proc/self/exe", ec);
    const fs::path candidates[] = {
        ec ? fs::path{} : self.parent_path() / "plot_metrics.py",
        ec ? fs::path{} : self.parent_path().parent_path().parent_path() / "tools" / "plot_metrics.py",
        fs::path("tools/plot_metrics.py"),
    };
    for (const fs::path& candidate : candidates) {
      if (!candidate.empty() && fs::exists(candidate)) {
        script = candidate;
        break;
      }
    }
  }
  if (script.empty()) {
    std::cerr << "plot script not found; skipping plot emission\n";
    return;
  }
  std::string command = "python3 " + script.string() + " " + csv;
  if (!occupancy.empty()) command += " --occupancy " + occupancy;
  std::cerr << "# running: " << command << "\n";
  if (std::system(command.c_str()) != 0) std::cerr << "plot emission failed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAMP cache eviction simulator"};
  app.require_subcommand(1);

  // gen ------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic trace");
  std::string gen_spec_name = "three-cost";
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  std::optional<std::uint64_t> gen_keys, gen_requests;
  std::optional<std::uint32_t> gen_phases;
  std::optional<double> gen_hot_fraction, gen_hot_request_fraction;
  std::optional<std::string> gen_cost_model, gen_size_model;
  gen_cmd->add_option("--spec", gen_spec_name,
                      "Preset: three-cost|evolving10|const-cost|equi-size");
  gen_cmd->add_option("--out", gen_out, "Output trace path")->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--keys", gen_keys, "Keys per phase");
  gen_cmd->add_option("--requests", gen_requests, "Requests per phase");
  gen_cmd->add_option("--phases", gen_phases, "Number of disjoint phases");
  gen_cmd->add_option("--hot-fraction", gen_hot_fraction, "Fraction of keys in the hot bucket");
  gen_cmd->add_option("--hot-request-fraction", gen_hot_request_fraction,
                      "Fraction of requests aimed at the hot bucket");
  gen_cmd->add_option("--cost-model", gen_cost_model, "fixed:a,b,c|const:v|loguniform:lo,hi");
  gen_cmd->add_option("--size-model", gen_size_model, "const:v|loguniform:lo,hi");

  // shared run/sweep options -----------------------------------------------
  std::string pool_spec_file, pool_boundaries = "1,100,10000", pool_alloc = "uniform";
  unsigned heap_arity = 8;
  std::string plot_script;

  // run ------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "Replay one trace through one policy");
  std::string run_trace, run_policy, run_precision = "5", run_out, run_occupancy_out;
  std::optional<double> run_ratio;
  std::optional<std::uint64_t> run_capacity;
  std::uint64_t run_sample_interval = 10'000;
  std::uint64_t run_seed = 1;
  bool run_plots = false;
  run_cmd->add_option("--trace", run_trace, "Trace CSV path")->required();
  run_cmd->add_option("--policy", run_policy, "lru|pooled-lru|gds|camp")->required();
  run_cmd->add_option("--precision", run_precision, "CAMP precision bits or 'unbounded'");
  run_cmd->add_option("--cache-ratio", run_ratio, "Capacity as a fraction of unique bytes");
  run_cmd->add_option("--capacity", run_capacity, "Capacity in bytes (overrides --cache-ratio)");
  run_cmd->add_option("--sample-interval", run_sample_interval, "Occupancy sample spacing");
  run_cmd->add_option("--seed", run_seed, "Recorded in the effective config echo");
  run_cmd->add_option("--out", run_out, "Metrics CSV path (stdout when omitted)");
  run_cmd->add_option("--occupancy-out", run_occupancy_out,
                      "Occupancy CSV path (default: <out>_occupancy.csv)");
  run_cmd->add_option("--pool-spec", pool_spec_file, "JSON pool spec (pooled-lru)");
  run_cmd->add_option("--pool-boundaries", pool_boundaries, "Pool lower cost bounds");
  run_cmd->add_option("--pool-alloc", pool_alloc,
                      "uniform|cost-proportional|range-low-proportional");
  run_cmd->add_option("--heap-arity", heap_arity, "Heap arity for camp/gds");
  run_cmd->add_flag("--emit-plots", run_plots, "Render plots from the CSVs");
  run_cmd->add_option("--plot-script", plot_script, "Override the plot script path");

  // sweep ------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a policy/ratio/precision grid");
  std::vector<std::string> sweep_traces;
  std::string sweep_policies = "lru,camp,gds", sweep_ratios = "0.1,0.25,0.5,0.75";
  std::string sweep_precisions = "5", sweep_out;
  unsigned sweep_jobs = 1;
  bool sweep_plots = false;
  sweep_cmd->add_option("--trace", sweep_traces, "Trace CSV path(s)")->required();
  sweep_cmd->add_option("--policies", sweep_policies, "Comma-separated policy list");
  sweep_cmd->add_option("--ratios", sweep_ratios, "Comma-separated cache size ratios");
  sweep_cmd->add_option("--precisions", sweep_precisions,
                        "CAMP precisions (bits or 'unbounded')");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Parallel cells");
  sweep_cmd->add_option("--out", sweep_out, "Sweep CSV path (stdout when omitted)");
  sweep_cmd->add_option("--pool-spec", pool_spec_file, "JSON pool spec (pooled-lru)");
  sweep_cmd->add_option("--pool-boundaries", pool_boundaries, "Pool lower cost bounds");
  sweep_cmd->add_option("--pool-alloc", pool_alloc,
                        "uniform|cost-proportional|range-low-proportional");
  sweep_cmd->add_option("--heap-arity", heap_arity, "Heap arity for camp/gds");
  sweep_cmd->add_flag("--emit-plots", sweep_plots, "Render plots from the CSV");
  sweep_cmd->add_option("--plot-script", plot_script, "Override the plot script path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      WorkloadSpec spec = preset_spec(gen_spec_name);
      spec.seed = gen_seed;
      if (gen_keys) spec.key_count = *gen_keys;
      if (gen_requests) spec.request_count = *gen_requests;
      if (gen_phases) spec.phases = *gen_phases;
      if (gen_hot_fraction) spec.hot_fraction = *gen_hot_fraction;
      if (gen_hot_request_fraction) spec.hot_request_fraction = *gen_hot_request_fraction;
      if (gen_cost_model) spec.cost_model = parse_cost_model(*gen_cost_model);
      if (gen_size_model) spec.size_model = parse_size_model(*gen_size_model);
      spec.validate();

      std::cerr << "# gen spec=" << gen_spec_name << " keys=" << spec.key_count
                << " requests=" << spec.request_count << " phases=" << spec.phases
                << " hot-fraction=" << spec.hot_fraction
                << " hot-request-fraction=" << spec.hot_request_fraction
                << " cost-model=" << describe_cost_model(spec.cost_model)
                << " size-model=" << describe_size_model(spec.size_model)
                << " seed=" << spec.seed << " out=" << gen_out << "\n";
      TraceGenerator generator(spec);
      write_trace(generator, gen_out);
      return 0;
    }

    const auto build_pool_spec = [&]() -> PoolSpec {
      if (!pool_spec_file.empty()) return load_pool_spec_file(pool_spec_file);
      PoolSpec spec;
      spec.boundaries = parse_u64_list(pool_boundaries, "--pool-boundaries");
      spec.allocation = parse_pool_alloc(pool_alloc);
      return spec;
    };

    if (run_cmd->parsed()) {
      const auto kind = policy_from_name(run_policy);
      if (!kind) throw CLI::ValidationError("--policy: unknown policy '" + run_policy + "'");
      if (!run_ratio && !run_capacity)
        throw CLI::ValidationError("run needs --cache-ratio or --capacity");
      const Precision precision = parse_precision(run_precision);
      if (*kind != PolicyKind::kCamp && run_cmd->count("--precision") > 0)
        throw CLI::ValidationError("--precision applies to camp only");
      const bool wants_pool = *kind == PolicyKind::kPooledLru;
      if (!wants_pool &&
          (run_cmd->count("--pool-spec") > 0 || run_cmd->count("--pool-boundaries") > 0 ||
           run_cmd->count("--pool-alloc") > 0))
        throw CLI::ValidationError("pool options apply to pooled-lru only");

      const TraceStats stats = scan_trace(run_trace);
      if (stats.unique_bytes == 0) throw std::runtime_error("trace is empty: " + run_trace);
      const std::uint64_t capacity =
          run_capacity ? *run_capacity : cache_size_from_ratio(stats.unique_bytes, *run_ratio);
      const double ratio =
          run_ratio ? *run_ratio
                    : static_cast<double>(capacity) / static_cast<double>(stats.unique_bytes);

      CacheConfig config;
      config.capacity = capacity;
      config.precision = precision;
      config.heap_arity = heap_arity;
      if (wants_pool) {
        PoolSpec pool = build_pool_spec();
        std::vector<std::uint64_t> totals;
        const std::vector<std::uint64_t>* totals_ptr = nullptr;
        if (pool.allocation == PoolAllocation::kCostProportional) {
          TraceReader pre_pass(run_trace);
          totals = pool_request_cost_totals(pre_pass, pool);
          totals_ptr = &totals;
        }
        config.pool_spec = resolve_pool_budgets(pool, capacity, totals_ptr);
      }

      std::cerr << "# run trace=" << run_trace << " policy=" << run_policy
                << " precision=" << precision_label(*kind, precision) << " cache-ratio=" << ratio
                << " capacity=" << capacity << " unique-bytes=" << stats.unique_bytes
                << " sample-interval=" << run_sample_interval << " heap-arity=" << heap_arity
                << " seed=" << run_seed;
      if (wants_pool) {
        std::cerr << " pool-alloc=" << pool_alloc_name(config.pool_spec->allocation)
                  << " pool-budgets=";
        for (std::size_t i = 0; i < config.pool_spec->budgets.size(); ++i)
          std::cerr << (i ? "," : "") << config.pool_spec->budgets[i];
      }
      std::cerr << "\n";

      auto policy = make_policy(*kind, config);
      RunOptions options;
      options.sample_interval = run_sample_interval;
      TraceReader reader(run_trace);
      const MetricsReport report = run(reader, *policy, options);

      SweepCell cell{run_trace, *kind, precision, ratio};
      if (run_out.empty()) {
        write_metrics_csv_header(std::cout);
        write_metrics_csv_row(cell, report, std::cout);
      } else {
        std::ofstream out(run_out);
        if (!out) throw std::runtime_error("cannot open " + run_out);
        write_metrics_csv_header(out);
        write_metrics_csv_row(cell, report, out);
        std::string occupancy_path = run_occupancy_out;
        if (occupancy_path.empty()) {
          std::filesystem::path p(run_out);
          p.replace_extension();
          occupancy_path = p.string() + "_occupancy.csv";
        }
        std::ofstream occ(occupancy_path);
        if (!occ) throw std::runtime_error("cannot open " + occupancy_path);
        write_occupancy_csv(report, occ);
        std::cerr << "# wrote " << run_out << " and " << occupancy_path << "\n";
        if (run_plots) emit_plots(run_out, occupancy_path, plot_script);
      }
      return 0;
    }

    if (sweep_cmd->parsed()) {
      SweepSpec spec;
      std::vector<std::vector<TraceRecord>> loaded;
      loaded.reserve(sweep_traces.size());
      for (const std::string& path : sweep_traces) loaded.push_back(read_trace(path));
      for (std::size_t i = 0; i < sweep_traces.size(); ++i)
        spec.traces.emplace_back(sweep_traces[i], &loaded[i]);

      for (const std::string& name : split_list(sweep_policies)) {
        const auto kind = policy_from_name(name);
        if (!kind) throw CLI::ValidationError("--policies: unknown policy '" + name + "'");
        spec.policies.push_back(*kind);
      }
      spec.ratios = parse_ratio_list(sweep_ratios);
      spec.camp_precisions.clear();
      for (const std::string& text : split_list(sweep_precisions))
        spec.camp_precisions.push_back(parse_precision(text));
      spec.heap_arity = heap_arity;
      spec.jobs = sweep_jobs;
      const bool wants_pool =
          std::find(spec.policies.begin(), spec.policies.end(), PolicyKind::kPooledLru) !=
          spec.policies.end();
      if (wants_pool) spec.pool_spec = build_pool_spec();

      std::cerr << "# sweep traces=" << sweep_traces.size() << " policies=" << sweep_policies
                << " ratios=" << sweep_ratios << " precisions=" << sweep_precisions
                << " jobs=" << sweep_jobs << " heap-arity=" << heap_arity;
      if (wants_pool) std::cerr << " pool-alloc=" << pool_alloc_name(spec.pool_spec->allocation);
      std::cerr << "\n";

      const std::vector<SweepRow> rows = sweep(spec);
      if (sweep_out.empty()) {
        write_sweep_csv(rows, std::cout);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw std::runtime_error("cannot open " + sweep_out);
        write_sweep_csv(rows, out);
        std::cerr << "# wrote " << sweep_out << "\n";
        if (sweep_plots) emit_plots(sweep_out, "", plot_script);
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
