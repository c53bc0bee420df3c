#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmatch/algorithms.hpp"
#include "bmatch/gpu_match.hpp"
#include "bmatch/kernel_grid.hpp"

namespace bmatch {

// One timed run: the matching phase only, after the common cheap-matching
// initialization.
struct BenchRecord {
  std::string instance;
  std::string algorithm;
  double time_s = 0.0;
  long long cardinality = 0;
  std::optional<PhaseCounters> counters;
  std::string grid;
  std::string schedule;
};

struct SuiteOptions {
  int repetitions = 3;
  std::optional<std::uint64_t> permute_seed;
  Schedule schedule = Schedule::serial();
  AlgorithmOptions algorithms;
};

struct SuiteResult {
  std::vector<BenchRecord> records;
  std::vector<std::string> load_errors;  // "path: message", suite continued
  std::vector<std::string> mismatches;   // instances with unequal cardinality
  bool ok() const { return mismatches.empty(); }
};

// Per (instance, algorithm): load, optionally permute (instance name gains a
// -rcp suffix), run cheap_matching once, clone that initial matching per
// algorithm, time only the matching phase, keep the minimum over
// repetitions. Throws std::invalid_argument on an unknown identifier.
SuiteResult run_suite(const std::vector<std::string>& instance_paths,
                      const std::vector<std::string>& algorithms,
                      const SuiteOptions& options = {});

// (prod t_i)^(1/n). Throws std::invalid_argument on empty or nonpositive
// input.
double geometric_mean(std::span<const double> times);

struct ProfilePoint {
  double x;
  double y;
};

// Cumulative speedup distribution: y(x) is the fraction of instances where
// t_baseline / t_target >= 2^x, over the caller-supplied x grid. Instances
// missing either side are skipped (reported through `skipped`).
std::vector<ProfilePoint> speedup_profile(
    std::span<const BenchRecord> records, const std::string& baseline,
    const std::string& target, std::span<const double> x_grid,
    std::vector<std::string>* skipped = nullptr);

// Per-algorithm cumulative distribution of t / best-on-instance, emitted at
// each distinct ratio. Throws std::invalid_argument when any algorithm is
// missing a time on any instance.
std::map<std::string, std::vector<ProfilePoint>> performance_profile(
    std::span<const BenchRecord> records,
    const std::vector<std::string>& algorithms);

// Instance names sorted by descending baseline time, truncated to count.
std::vector<std::string> hardest_instances(std::span<const BenchRecord> records,
                                           const std::string& baseline,
                                           std::size_t count);

// Manifest: one graph path per line, # comments and blank lines ignored.
std::vector<std::string> read_manifest(std::istream& in);

void write_records_csv(std::span<const BenchRecord> records, std::ostream& out);
void write_records_json(std::span<const BenchRecord> records,
                        std::ostream& out);
std::string counters_json(const PhaseCounters& counters);

}  // namespace bmatch
