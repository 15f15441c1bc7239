// Drives the installed CLI binary (path in argv[1]) through the gen/run/
// sweep contracts: byte-identical regeneration, the metrics row format, and
// the sweep grid row count.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s\n", what.c_str());
    ++failures;
  }
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run_command(const std::string& command) { return std::system(command.c_str()); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
    return 64;
  }
  const std::string cli = argv[1];
  const fs::path dir = fs::temp_directory_path() / "camp_cli_test";
  fs::create_directories(dir);
  const std::string quiet = " 2>/dev/null";

  const std::string gen_args =
      " gen --spec three-cost --keys 500 --requests 5000 --seed 1";
  const fs::path trace_a = dir / "a.csv";
  const fs::path trace_b = dir / "b.csv";
  check(run_command(cli + gen_args + " --out " + trace_a.string() + quiet) == 0,
        "gen exits cleanly");
  check(run_command(cli + gen_args + " --out " + trace_b.string() + quiet) == 0,
        "gen exits cleanly again");
  check(!slurp(trace_a).empty() && slurp(trace_a) == slurp(trace_b),
        "same spec and seed produce byte-identical traces");

  const fs::path other = dir / "c.csv";
  check(run_command(cli + " gen --spec three-cost --keys 500 --requests 5000 --seed 2 --out " +
                    other.string() + quiet) == 0,
        "gen with another seed exits cleanly");
  check(slurp(trace_a) != slurp(other), "different seeds change the trace");

  const fs::path metrics = dir / "metrics.csv";
  check(run_command(cli + " run --policy camp --precision 5 --cache-ratio 0.25 --trace " +
                    trace_a.string() + " --out " + metrics.string() + quiet) == 0,
        "run exits cleanly");
  {
    const auto rows = lines_of(slurp(metrics));
    check(rows.size() == 2, "run emits a header and exactly one row");
    check(rows.size() == 2 &&
              rows[0] ==
                  "policy,precision,cache_ratio,trace,total_requests,cold_requests,"
                  "counted_requests,counted_misses,miss_rate,counted_miss_cost,"
                  "counted_total_cost,cost_miss_ratio,heap_visits,queues",
          "run header carries the metrics columns");
    check(rows.size() == 2 && rows[1].rfind("camp,5,0.25,", 0) == 0,
          "run row starts with the cell identity");
  }
  fs::path occupancy = dir / "metrics_occupancy.csv";
  check(fs::exists(occupancy), "run writes the sibling occupancy CSV");
  {
    const auto rows = lines_of(slurp(occupancy));
    check(!rows.empty() && rows[0] == "request_index,phase,fraction",
          "occupancy header matches the pinned format");
  }

  const fs::path sweep_csv = dir / "sweep.csv";
  check(run_command(cli + " sweep --policies lru,camp,gds --ratios 0.1,0.25,0.5,0.75 --trace " +
                    trace_a.string() + " --out " + sweep_csv.string() + quiet) == 0,
        "sweep exits cleanly");
  {
    const auto rows = lines_of(slurp(sweep_csv));
    check(rows.size() == 13, "3 policies x 4 ratios give 12 rows plus the header");
    check(!rows.empty() &&
              rows[0] ==
                  "policy,precision,cache_ratio,trace,miss_rate,cost_miss_ratio,heap_visits,queues",
          "sweep header matches the pinned format");
  }

  check(run_command(cli + " run --policy lru --cache-ratio 0.5 --trace " + dir.string() +
                    "/missing.csv" + quiet) != 0,
        "run on a missing trace fails with a diagnostic");
  check(run_command(cli + " run --policy lru --precision 3 --cache-ratio 0.5 --trace " +
                    trace_a.string() + quiet + " >/dev/null") != 0,
        "precision is rejected for non-camp policies");
  check(run_command(cli + " sweep --policies lru --ratios \"\" --trace " + trace_a.string() +
                    quiet + " >/dev/null") != 0,
        "an empty ratio list is rejected");
  check(run_command(cli + " frobnicate" + quiet + " >/dev/null") != 0,
        "unknown subcommands are rejected");

  // Pooled LRU path with a JSON pool spec file.
  const fs::path pool_json = dir / "pools.json";
  {
    std::ofstream out(pool_json);
    out << R"({"boundaries": [1, 100, 10000], "allocation": "cost-proportional"})";
  }
  check(run_command(cli + " run --policy pooled-lru --cache-ratio 0.25 --pool-spec " +
                    pool_json.string() + " --trace " + trace_a.string() + quiet +
                    " >/dev/null") == 0,
        "pooled-lru accepts a JSON pool spec");

  fs::remove_all(dir);
  std::printf("%d failures\n", failures);
  return failures == 0 ? 0 : 1;
}
