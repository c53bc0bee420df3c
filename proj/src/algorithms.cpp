#include "bmatch/algorithms.hpp"

#include <map>

#include "bmatch/baselines.hpp"

namespace bmatch {

namespace {

struct GridAlgo {
  bool shortest;  // apsb
  BfsKernel kernel;
  bool improved_alternate;
};

// The endpoint-encoded improvements apply only to the shortest-path driver
// with the with-root kernel; they do not help the augment-all driver.
const std::map<std::string, GridAlgo>& grid_algos() {
  static const std::map<std::string, GridAlgo> table = {
      {"apfb-gpubfs", {false, BfsKernel::Gpubfs, false}},
      {"apfb-wr", {false, BfsKernel::GpubfsWr, false}},
      {"apsb-gpubfs", {true, BfsKernel::Gpubfs, false}},
      {"apsb-wr", {true, BfsKernel::GpubfsWr, true}},
  };
  return table;
}

std::map<std::string, AlgorithmFn>& extra_algos() {
  static std::map<std::string, AlgorithmFn> table;
  return table;
}

AlgorithmFn make_grid_runner(const GridAlgo& algo, const GridConfig& grid) {
  return [algo, grid](const BipartiteCsr& g, const MatchingState& init,
                      const Schedule& schedule) {
    DriverResult run =
        algo.shortest
            ? apsb(g, init, grid, schedule, algo.kernel,
                   algo.improved_alternate)
            : apfb(g, init, grid, schedule, algo.kernel);
    return AlgorithmResult{std::move(run.matching), std::move(run.counters)};
  };
}

}  // namespace

const std::vector<std::string>& algorithm_ids() {
  static const std::vector<std::string> ids = {
      "hk",
      "pfp",
      "apfb-gpubfs-ct",
      "apfb-gpubfs-mt",
      "apfb-wr-ct",
      "apfb-wr-mt",
      "apsb-gpubfs-ct",
      "apsb-gpubfs-mt",
      "apsb-wr-ct",
      "apsb-wr-mt",
  };
  return ids;
}

std::optional<AlgorithmFn> make_algorithm(const std::string& id,
                                          const AlgorithmOptions& options) {
  if (auto it = extra_algos().find(id); it != extra_algos().end())
    return it->second;

  if (id == "hk")
    return AlgorithmFn([](const BipartiteCsr& g, const MatchingState& init,
                          const Schedule&) {
      return AlgorithmResult{hopcroft_karp(g, init), std::nullopt};
    });
  if (id == "pfp")
    return AlgorithmFn([](const BipartiteCsr& g, const MatchingState& init,
                          const Schedule&) {
      return AlgorithmResult{pfp(g, init), std::nullopt};
    });

  std::string base = id;
  GridMode mode = options.default_grid;
  if (id.size() > 3 && id.ends_with("-ct")) {
    base = id.substr(0, id.size() - 3);
    mode = GridMode::Ct;
  } else if (id.size() > 3 && id.ends_with("-mt")) {
    base = id.substr(0, id.size() - 3);
    mode = GridMode::Mt;
  }
  const auto it = grid_algos().find(base);
  if (it == grid_algos().end()) return std::nullopt;
  GridConfig grid{mode, options.ct_thread_num, options.max_threads};
  return make_grid_runner(it->second, grid);
}

void register_algorithm(const std::string& id, AlgorithmFn fn) {
  extra_algos()[id] = std::move(fn);
}

}  // namespace bmatch
