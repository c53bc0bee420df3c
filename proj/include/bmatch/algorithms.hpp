#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmatch/csr_graph.hpp"
#include "bmatch/gpu_match.hpp"
#include "bmatch/kernel_grid.hpp"
#include "bmatch/matching.hpp"

namespace bmatch {

struct AlgorithmResult {
  MatchingState matching;
  std::optional<PhaseCounters> counters;  // grid algorithms only
};

using AlgorithmFn = std::function<AlgorithmResult(
    const BipartiteCsr&, const MatchingState& init, const Schedule&)>;

struct AlgorithmOptions {
  int ct_thread_num = 65536;
  int max_threads = 65536;
  // Applied to grid identifiers that omit the -ct/-mt suffix.
  GridMode default_grid = GridMode::Ct;
};

// The canonical identifiers: hk, pfp, and the eight grid configurations
// {apfb,apsb}-{gpubfs,wr}-{ct,mt}.
const std::vector<std::string>& algorithm_ids();

// Resolves an identifier to a runner; std::nullopt when unknown. Grid
// identifiers also accept the suffixless form (apfb-wr), taking the grid
// mode from the options.
std::optional<AlgorithmFn> make_algorithm(const std::string& id,
                                          const AlgorithmOptions& options = {});

// Registers (or replaces) an identifier; used by tests to inject faulty
// algorithms into the suite runner.
void register_algorithm(const std::string& id, AlgorithmFn fn);

}  // namespace bmatch
