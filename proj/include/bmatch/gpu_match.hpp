#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bmatch/csr_graph.hpp"
#include "bmatch/kernel_grid.hpp"
#include "bmatch/matching.hpp"

namespace bmatch {

enum class BfsKernel { Gpubfs, GpubfsWr };

// Shared state of one BFS phase. bfs_array holds column levels; with the
// improved endpoint encoding (start_level = 2) a root's entry can become
// -(endpoint row), so live levels stay >= 1 and 0 means row 0. predecessor
// holds, per row, the column that discovered it this phase. root is used by
// the with-root kernel only.
struct BfsPhaseState {
  std::vector<int> bfs_array;
  std::vector<int> predecessor;
  std::vector<int> root;
  int start_level = 2;
  int bfs_level = 2;
  int vertex_inserted = 0;
  int augmenting_path_found = 0;
};

// bfs_array[c] = start_level - 1 when c is matched, start_level when not.
std::vector<int> init_bfs_array(const std::vector<int>& cmatch,
                                int start_level);

// root[c] = c when c is unmatched, 0 otherwise (placeholder; real roots are
// written when a column is discovered).
std::vector<int> init_root(const std::vector<int>& cmatch);

// Work counters accumulated over a driver run.
struct PhaseCounters {
  long long outer_iterations = 0;
  std::vector<long long> bfs_launches_per_iteration;
  long long columns_scanned = 0;
  long long alternations_attempted = 0;
  long long fix_resets = 0;
  long long serial_retries = 0;

  long long bfs_launches_total() const {
    long long total = 0;
    for (long long v : bfs_launches_per_iteration) total += v;
    return total;
  }
};

// One level expansion: every column at bfs_level scans its rows; a matched
// row whose column is unvisited labels that column bfs_level + 1, an
// unmatched row is flagged rmatch = -2 and raises augmenting_path_found.
void gpubfs(BfsPhaseState& phase, const BipartiteCsr& g, MatchingState& m,
            const GridConfig& grid, const Schedule& schedule,
            PhaseCounters* counters = nullptr, std::uint64_t launch_index = 0);

// As gpubfs, plus root propagation and an early exit: columns whose root is
// already marked found are skipped. On finding an unmatched row the root's
// bfs_array entry becomes start_level - 2, or -(row) when improved.
void gpubfs_wr(BfsPhaseState& phase, const BipartiteCsr& g, MatchingState& m,
               const GridConfig& grid, const Schedule& schedule, bool improved,
               PhaseCounters* counters = nullptr,
               std::uint64_t launch_index = 0);

// Walks the predecessor chain of every row flagged -2, swapping matched
// pairs toward the root. A walk stops at an unmatched root or when it meets
// a column already claimed by another walk this phase.
void alternate(const BipartiteCsr& g, MatchingState& m,
               const std::vector<int>& predecessor, const GridConfig& grid,
               const Schedule& schedule, PhaseCounters* counters = nullptr,
               std::uint64_t launch_index = 0);

// Walks starting only from the endpoint rows encoded in bfs_array by the
// improved with-root kernel; other -2 flags are left for fix_matching.
void alternate_wr(const BipartiteCsr& g, MatchingState& m,
                  const BfsPhaseState& phase, const GridConfig& grid,
                  const Schedule& schedule, PhaseCounters* counters = nullptr,
                  std::uint64_t launch_index = 0);

// Repairs the matching after speculative alternation: clears leftover -2
// flags, resets rows whose column disagrees, then resets columns whose row
// departed. The result always validates.
void fix_matching(MatchingState& m, PhaseCounters* counters = nullptr);

// Runs level launches until no vertex is inserted or, with break_on_found,
// until the first launch that raises augmenting_path_found. Returns the
// number of launches.
long long expand_bfs(BfsPhaseState& phase, const BipartiteCsr& g,
                     MatchingState& m, const GridConfig& grid,
                     const Schedule& schedule, BfsKernel kernel,
                     bool break_on_found, bool improved,
                     PhaseCounters* counters = nullptr,
                     std::uint64_t launch_seq = 0);

struct PhaseResult {
  bool augmenting_path_found = false;
  long long bfs_launches = 0;
  long long columns_scanned = 0;
  long long alternations_attempted = 0;
  long long fix_resets = 0;
};

// One full phase: (re)initialize the phase arrays, expand the BFS, alternate
// along the discovered paths, repair.
PhaseResult run_phase(const BipartiteCsr& g, MatchingState& m,
                      const GridConfig& grid, const Schedule& schedule,
                      BfsKernel kernel, bool break_on_found,
                      bool improved_alternate, std::uint64_t launch_seq = 0);

// Observation hook fired after every phase (after any serial retry).
struct PhaseEvent {
  long long iteration;
  bool augmenting_path_found;
  long long cardinality_before;
  long long cardinality_after;
  bool serial_retry;
  long long bfs_launches;
  const MatchingState& state;
};
using PhaseObserver = std::function<void(const PhaseEvent&)>;

struct DriverResult {
  MatchingState matching;
  PhaseCounters counters;
};

// Augment-all driver: each phase expands the BFS to exhaustion, alternates
// every discovered path, repairs, and repeats until a phase finds nothing.
DriverResult apfb(const BipartiteCsr& g, MatchingState init,
                  const GridConfig& grid, const Schedule& schedule,
                  BfsKernel kernel, const PhaseObserver& observer = {});

// Shortest-path driver: the BFS loop breaks as soon as a launch finds an
// augmenting path, so only shortest-level paths are alternated per phase.
// improved_alternate selects the endpoint-encoded kernel and walk (requires
// the with-root kernel).
DriverResult apsb(const BipartiteCsr& g, MatchingState init,
                  const GridConfig& grid, const Schedule& schedule,
                  BfsKernel kernel, bool improved_alternate,
                  const PhaseObserver& observer = {});

}  // namespace bmatch
