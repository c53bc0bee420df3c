#include "bmatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "bmatch/matching.hpp"
#include "bmatch/matrix_market.hpp"

namespace bmatch {

namespace {

std::string grid_of(const std::string& algorithm_id) {
  if (algorithm_id.ends_with("-ct")) return "ct";
  if (algorithm_id.ends_with("-mt")) return "mt";
  return "-";
}

}  // namespace

SuiteResult run_suite(const std::vector<std::string>& instance_paths,
                      const std::vector<std::string>& algorithms,
                      const SuiteOptions& options) {
  std::vector<std::pair<std::string, AlgorithmFn>> runners;
  for (const auto& id : algorithms) {
    auto fn = make_algorithm(id, options.algorithms);
    if (!fn) throw std::invalid_argument("unknown algorithm '" + id + "'");
    runners.emplace_back(id, std::move(*fn));
  }

  SuiteResult result;
  for (const auto& path : instance_paths) {
    BipartiteCsr g;
    try {
      g = load_matrix_market(path);
      if (options.permute_seed) {
        g = permute_random(g, *options.permute_seed);
        g.name += "-rcp";
      }
    } catch (const std::exception& e) {
      result.load_errors.push_back(path + ": " + e.what());
      continue;
    }

    const MatchingState init = cheap_matching(g);
    long long instance_cardinality = -1;
    bool mismatch = false;
    for (const auto& [id, run] : runners) {
      double best = std::numeric_limits<double>::infinity();
      AlgorithmResult res;
      for (int rep = 0; rep < std::max(1, options.repetitions); ++rep) {
        MatchingState start = init;
        const auto t0 = std::chrono::steady_clock::now();
        res = run(g, start, options.schedule);
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      }
      const long long card = cardinality(res.matching);
      if (instance_cardinality < 0)
        instance_cardinality = card;
      else if (card != instance_cardinality)
        mismatch = true;
      result.records.push_back({g.name, id, best, card, std::move(res.counters),
                                grid_of(id), options.schedule.label()});
    }
    if (mismatch) result.mismatches.push_back(g.name);
  }
  return result;
}

double geometric_mean(std::span<const double> times) {
  if (times.empty())
    throw std::invalid_argument("geometric mean of an empty list");
  double log_sum = 0.0;
  for (double t : times) {
    if (t <= 0.0)
      throw std::invalid_argument("geometric mean requires positive values");
    log_sum += std::log(t);
  }
  return std::exp(log_sum / static_cast<double>(times.size()));
}

namespace {

std::map<std::string, std::map<std::string, double>> times_by_instance(
    std::span<const BenchRecord> records) {
  std::map<std::string, std::map<std::string, double>> table;
  for (const auto& rec : records)
    table[rec.instance][rec.algorithm] = rec.time_s;
  return table;
}

}  // namespace

std::vector<ProfilePoint> speedup_profile(std::span<const BenchRecord> records,
                                          const std::string& baseline,
                                          const std::string& target,
                                          std::span<const double> x_grid,
                                          std::vector<std::string>* skipped) {
  const auto table = times_by_instance(records);
  std::vector<double> speedups;
  for (const auto& [instance, times] : table) {
    const auto b = times.find(baseline);
    const auto t = times.find(target);
    if (b == times.end() || t == times.end()) {
      if (skipped) skipped->push_back(instance);
      continue;
    }
    speedups.push_back(b->second / t->second);
  }
  std::vector<ProfilePoint> points;
  points.reserve(x_grid.size());
  for (double x : x_grid) {
    const double threshold = std::exp2(x);
    const auto hits = std::count_if(speedups.begin(), speedups.end(),
                                    [&](double s) { return s >= threshold; });
    const double y = speedups.empty()
                         ? 0.0
                         : static_cast<double>(hits) /
                               static_cast<double>(speedups.size());
    points.push_back({x, y});
  }
  return points;
}

std::map<std::string, std::vector<ProfilePoint>> performance_profile(
    std::span<const BenchRecord> records,
    const std::vector<std::string>& algorithms) {
  const auto table = times_by_instance(records);
  std::map<std::string, std::vector<double>> ratios;
  for (const auto& [instance, times] : table) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& id : algorithms) {
      const auto it = times.find(id);
      if (it == times.end())
        throw std::invalid_argument("performance profile needs a time for '" +
                                    id + "' on '" + instance + "'");
      best = std::min(best, it->second);
    }
    for (const auto& id : algorithms)
      ratios[id].push_back(times.at(id) / best);
  }

  std::map<std::string, std::vector<ProfilePoint>> profiles;
  for (const auto& id : algorithms) {
    auto& rs = ratios[id];
    std::sort(rs.begin(), rs.end());
    std::vector<ProfilePoint> points;
    const double n = static_cast<double>(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double y = static_cast<double>(i + 1) / n;
      if (!points.empty() && points.back().x == rs[i])
        points.back().y = y;  // collapse ties to the largest fraction
      else
        points.push_back({rs[i], y});
    }
    profiles[id] = std::move(points);
  }
  return profiles;
}

std::vector<std::string> hardest_instances(std::span<const BenchRecord> records,
                                           const std::string& baseline,
                                           std::size_t count) {
  std::vector<std::pair<double, std::string>> timed;
  for (const auto& rec : records)
    if (rec.algorithm == baseline) timed.emplace_back(rec.time_s, rec.instance);
  std::sort(timed.begin(), timed.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<std::string> names;
  for (std::size_t i = 0; i < timed.size() && i < count; ++i)
    names.push_back(timed[i].second);
  return names;
}

std::vector<std::string> read_manifest(std::istream& in) {
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    const auto head = line.find_first_not_of(" \t\r");
    if (head == std::string::npos || line[head] == '#') continue;
    auto tail = line.find_last_not_of(" \t\r");
    paths.push_back(line.substr(head, tail - head + 1));
  }
  return paths;
}

namespace {

nlohmann::json counters_to_json(const PhaseCounters& c) {
  return nlohmann::json{
      {"outer_iterations", c.outer_iterations},
      {"bfs_launches_per_iteration", c.bfs_launches_per_iteration},
      {"columns_scanned", c.columns_scanned},
      {"alternations_attempted", c.alternations_attempted},
      {"fix_resets", c.fix_resets},
      {"serial_retries", c.serial_retries},
  };
}

}  // namespace

std::string counters_json(const PhaseCounters& counters) {
  return counters_to_json(counters).dump();
}

void write_records_csv(std::span<const BenchRecord> records,
                       std::ostream& out) {
  out << "instance,algorithm,time_s,cardinality,outer_iterations,"
         "bfs_launches_total,columns_scanned,alternations_attempted,"
         "fix_resets,serial_retries,grid,schedule\n";
  for (const auto& rec : records) {
    out << rec.instance << ',' << rec.algorithm << ',' << rec.time_s << ','
        << rec.cardinality << ',';
    if (rec.counters) {
      const auto& c = *rec.counters;
      out << c.outer_iterations << ',' << c.bfs_launches_total() << ','
          << c.columns_scanned << ',' << c.alternations_attempted << ','
          << c.fix_resets << ',' << c.serial_retries;
    } else {
      out << ",,,,,";
    }
    out << ',' << rec.grid << ',' << rec.schedule << '\n';
  }
}

void write_records_json(std::span<const BenchRecord> records,
                        std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json item{
        {"instance", rec.instance},   {"algorithm", rec.algorithm},
        {"time_s", rec.time_s},       {"cardinality", rec.cardinality},
        {"grid", rec.grid},           {"schedule", rec.schedule},
    };
    if (rec.counters) item["counters"] = counters_to_json(*rec.counters);
    arr.push_back(std::move(item));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace bmatch
