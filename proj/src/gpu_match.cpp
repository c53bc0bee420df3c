#include "bmatch/gpu_match.hpp"

#include <stdexcept>
#include <utility>

namespace bmatch {

std::vector<int> init_bfs_array(const std::vector<int>& cmatch,
                                int start_level) {
  std::vector<int> bfs_array(cmatch.size());
  for (std::size_t c = 0; c < cmatch.size(); ++c)
    bfs_array[c] = cmatch[c] > -1 ? start_level - 1 : start_level;
  return bfs_array;
}

std::vector<int> init_root(const std::vector<int>& cmatch) {
  std::vector<int> root(cmatch.size());
  for (std::size_t c = 0; c < cmatch.size(); ++c)
    root[c] = cmatch[c] > -1 ? 0 : static_cast<int>(c);
  return root;
}

void gpubfs(BfsPhaseState& phase, const BipartiteCsr& g, MatchingState& m,
            const GridConfig& grid, const Schedule& schedule,
            PhaseCounters* counters, std::uint64_t launch_index) {
  const int nc = g.nc;
  const int tot = grid.threads_for(nc);
  const int bfs_level = phase.bfs_level;
  const int unvisited = phase.start_level - 1;
  int* const bfs_array = phase.bfs_array.data();
  int* const predecessor = phase.predecessor.data();
  int* const rmatch = m.rmatch.data();
  const std::int64_t* const cxadj = g.cxadj.data();
  const int* const cadj = g.cadj.data();
  int* const vertex_inserted = &phase.vertex_inserted;
  int* const path_found = &phase.augmenting_path_found;
  const long long base_cnt = nc / tot;
  const long long extra = nc % tot;
  StripedCounter scans;
  StripedCounter* const scan_slots = counters ? &scans : nullptr;

  execute_kernel(
      [=](int tid) {
        const long long process_cnt = base_cnt + (tid < extra ? 1 : 0);
        long long my_scans = 0;
        for (long long i = 0; i < process_cnt; ++i) {
          const long long col_vertex = assigned_vertex(i, tid, tot);
          if (shared_load(bfs_array[col_vertex]) != bfs_level) continue;
          ++my_scans;
          for (auto j = cxadj[col_vertex]; j < cxadj[col_vertex + 1]; ++j) {
            const int neighbor_row = cadj[j];
            const int col_match = shared_load(rmatch[neighbor_row]);
            if (col_match > -1) {
              if (shared_load(bfs_array[col_match]) == unvisited) {
                raise_flag(*vertex_inserted);
                shared_store(bfs_array[col_match], bfs_level + 1);
                shared_store(predecessor[neighbor_row],
                             static_cast<int>(col_vertex));
              }
            } else if (col_match == -1) {
              shared_store(rmatch[neighbor_row], -2);
              shared_store(predecessor[neighbor_row],
                           static_cast<int>(col_vertex));
              raise_flag(*path_found);
            }
          }
        }
        if (scan_slots && my_scans) scan_slots->add(tid, tot, my_scans);
      },
      tot, schedule, launch_index);
  if (counters) counters->columns_scanned += scans.total();
}

void gpubfs_wr(BfsPhaseState& phase, const BipartiteCsr& g, MatchingState& m,
               const GridConfig& grid, const Schedule& schedule, bool improved,
               PhaseCounters* counters, std::uint64_t launch_index) {
  if (improved && phase.start_level != 2)
    throw std::logic_error(
        "endpoint encoding requires start level 2 so live levels stay "
        "positive");
  const int nc = g.nc;
  const int tot = grid.threads_for(nc);
  const int bfs_level = phase.bfs_level;
  const int unvisited = phase.start_level - 1;
  const int found_mark = phase.start_level - 2;
  int* const bfs_array = phase.bfs_array.data();
  int* const predecessor = phase.predecessor.data();
  int* const root = phase.root.data();
  int* const rmatch = m.rmatch.data();
  const std::int64_t* const cxadj = g.cxadj.data();
  const int* const cadj = g.cadj.data();
  int* const vertex_inserted = &phase.vertex_inserted;
  int* const path_found = &phase.augmenting_path_found;
  const long long base_cnt = nc / tot;
  const long long extra = nc % tot;
  StripedCounter scans;
  StripedCounter* const scan_slots = counters ? &scans : nullptr;

  execute_kernel(
      [=](int tid) {
        const long long process_cnt = base_cnt + (tid < extra ? 1 : 0);
        long long my_scans = 0;
        for (long long i = 0; i < process_cnt; ++i) {
          const long long col_vertex = assigned_vertex(i, tid, tot);
          if (shared_load(bfs_array[col_vertex]) != bfs_level) continue;
          const int my_root = shared_load(root[col_vertex]);
          // Early exit: the root already has a discovered augmenting path.
          if (shared_load(bfs_array[my_root]) < unvisited) continue;
          ++my_scans;
          for (auto j = cxadj[col_vertex]; j < cxadj[col_vertex + 1]; ++j) {
            const int neighbor_row = cadj[j];
            const int col_match = shared_load(rmatch[neighbor_row]);
            if (col_match > -1) {
              if (shared_load(bfs_array[col_match]) == unvisited) {
                raise_flag(*vertex_inserted);
                shared_store(bfs_array[col_match], bfs_level + 1);
                shared_store(root[col_match], my_root);
                shared_store(predecessor[neighbor_row],
                             static_cast<int>(col_vertex));
              }
            } else if (col_match == -1) {
              shared_store(bfs_array[my_root],
                           improved ? -neighbor_row : found_mark);
              shared_store(rmatch[neighbor_row], -2);
              shared_store(predecessor[neighbor_row],
                           static_cast<int>(col_vertex));
              raise_flag(*path_found);
            }
          }
        }
        if (scan_slots && my_scans) scan_slots->add(tid, tot, my_scans);
      },
      tot, schedule, launch_index);
  if (counters) counters->columns_scanned += scans.total();
}

namespace {

// Swaps pairs along a predecessor chain from an endpoint row toward the
// root. Every write keeps pred[row] = col for the pair it records, so a walk
// that reads a column already claimed this phase sees that relation and
// breaks; the break check is evaluated only for a real matched row, an
// unmatched root takes the final swap and ends the walk.
inline void alternate_walk(int row_vertex, const int* predecessor,
                           int* rmatch, int* cmatch) {
  while (row_vertex != -1) {
    const int matched_col = predecessor[row_vertex];
    const int matched_row = shared_load(cmatch[matched_col]);
    if (matched_row >= 0 && predecessor[matched_row] == matched_col) break;
    shared_store(cmatch[matched_col], row_vertex);
    shared_store(rmatch[row_vertex], matched_col);
    row_vertex = matched_row;
  }
}

}  // namespace

void alternate(const BipartiteCsr& g, MatchingState& m,
               const std::vector<int>& predecessor, const GridConfig& grid,
               const Schedule& schedule, PhaseCounters* counters,
               std::uint64_t launch_index) {
  const int nr = g.nr;
  const int tot = grid.threads_for(g.nc);
  int* const rmatch = m.rmatch.data();
  int* const cmatch = m.cmatch.data();
  const int* const pred = predecessor.data();
  const long long base_cnt = nr / tot;
  const long long extra = nr % tot;
  StripedCounter walks;
  StripedCounter* const walk_slots = counters ? &walks : nullptr;

  execute_kernel(
      [=](int tid) {
        const long long process_cnt = base_cnt + (tid < extra ? 1 : 0);
        long long my_walks = 0;
        for (long long i = 0; i < process_cnt; ++i) {
          const long long row_vertex = assigned_vertex(i, tid, tot);
          if (shared_load(rmatch[row_vertex]) != -2) continue;
          ++my_walks;
          alternate_walk(static_cast<int>(row_vertex), pred, rmatch, cmatch);
        }
        if (walk_slots && my_walks) walk_slots->add(tid, tot, my_walks);
      },
      tot, schedule, launch_index);
  if (counters) counters->alternations_attempted += walks.total();
}

void alternate_wr(const BipartiteCsr& g, MatchingState& m,
                  const BfsPhaseState& phase, const GridConfig& grid,
                  const Schedule& schedule, PhaseCounters* counters,
                  std::uint64_t launch_index) {
  const int nc = g.nc;
  const int tot = grid.threads_for(nc);
  int* const rmatch = m.rmatch.data();
  int* const cmatch = m.cmatch.data();
  const int* const pred = phase.predecessor.data();
  const int* const bfs_array = phase.bfs_array.data();
  const long long base_cnt = nc / tot;
  const long long extra = nc % tot;
  StripedCounter walks;
  StripedCounter* const walk_slots = counters ? &walks : nullptr;

  execute_kernel(
      [=](int tid) {
        const long long process_cnt = base_cnt + (tid < extra ? 1 : 0);
        long long my_walks = 0;
        for (long long i = 0; i < process_cnt; ++i) {
          const long long col_vertex = assigned_vertex(i, tid, tot);
          const int mark = bfs_array[col_vertex];
          if (mark > 0) continue;  // live levels are >= 1 with start level 2
          ++my_walks;
          alternate_walk(-mark, pred, rmatch, cmatch);
        }
        if (walk_slots && my_walks) walk_slots->add(tid, tot, my_walks);
      },
      tot, schedule, launch_index);
  if (counters) counters->alternations_attempted += walks.total();
}

void fix_matching(MatchingState& m, PhaseCounters* counters) {
  long long resets = 0;
  for (auto& rm : m.rmatch) {
    if (rm == -2) {
      rm = -1;
      ++resets;
    }
  }
  const int nr = static_cast<int>(m.rmatch.size());
  const int nc = static_cast<int>(m.cmatch.size());
  for (int r = 0; r < nr; ++r) {
    const int c = m.rmatch[r];
    if (c >= 0 && m.cmatch[c] != r) {
      m.rmatch[r] = -1;
      ++resets;
    }
  }
  for (int c = 0; c < nc; ++c) {
    const int r = m.cmatch[c];
    if (r >= 0 && m.rmatch[r] != c) {
      m.cmatch[c] = -1;
      ++resets;
    }
  }
  if (counters) counters->fix_resets += resets;
}

long long expand_bfs(BfsPhaseState& phase, const BipartiteCsr& g,
                     MatchingState& m, const GridConfig& grid,
                     const Schedule& schedule, BfsKernel kernel,
                     bool break_on_found, bool improved,
                     PhaseCounters* counters, std::uint64_t launch_seq) {
  long long launches = 0;
  phase.vertex_inserted = 1;
  while (phase.vertex_inserted) {
    phase.vertex_inserted = 0;
    if (kernel == BfsKernel::Gpubfs)
      gpubfs(phase, g, m, grid, schedule, counters, launch_seq + launches);
    else
      gpubfs_wr(phase, g, m, grid, schedule, improved, counters,
                launch_seq + launches);
    ++launches;
    if (break_on_found && phase.augmenting_path_found) break;
    ++phase.bfs_level;
  }
  return launches;
}

PhaseResult run_phase(const BipartiteCsr& g, MatchingState& m,
                      const GridConfig& grid, const Schedule& schedule,
                      BfsKernel kernel, bool break_on_found,
                      bool improved_alternate, std::uint64_t launch_seq) {
  if (improved_alternate && kernel != BfsKernel::GpubfsWr)
    throw std::logic_error(
        "the endpoint-encoded alternation requires the with-root kernel");
  constexpr int kStartLevel = 2;

  BfsPhaseState phase;
  phase.start_level = kStartLevel;
  phase.bfs_level = kStartLevel;
  phase.bfs_array = init_bfs_array(m.cmatch, kStartLevel);
  phase.predecessor.assign(g.nr, -1);
  if (kernel == BfsKernel::GpubfsWr) phase.root = init_root(m.cmatch);

  PhaseCounters scratch;
  PhaseResult result;
  result.bfs_launches =
      expand_bfs(phase, g, m, grid, schedule, kernel, break_on_found,
                 improved_alternate, &scratch, launch_seq);
  if (improved_alternate)
    alternate_wr(g, m, phase, grid, schedule, &scratch,
                 launch_seq + result.bfs_launches);
  else
    alternate(g, m, phase.predecessor, grid, schedule, &scratch,
              launch_seq + result.bfs_launches);
  fix_matching(m, &scratch);

  result.augmenting_path_found = phase.augmenting_path_found != 0;
  result.columns_scanned = scratch.columns_scanned;
  result.alternations_attempted = scratch.alternations_attempted;
  result.fix_resets = scratch.fix_resets;
  return result;
}

namespace {

DriverResult run_driver(const BipartiteCsr& g, MatchingState m,
                        const GridConfig& grid, const Schedule& schedule,
                        BfsKernel kernel, bool break_on_found,
                        bool improved_alternate,
                        const PhaseObserver& observer) {
  PhaseCounters counters;
  std::uint64_t launch_seq = 0;
  const long long phase_bound = static_cast<long long>(g.nc) + 1;
  long long before = cardinality(m);
  for (;;) {
    counters.outer_iterations++;
    if (counters.outer_iterations > phase_bound)
      throw std::runtime_error("termination bound exceeded: more than nc + 1 "
                               "phases on '" +
                               g.name + "'");
    PhaseResult phase = run_phase(g, m, grid, schedule, kernel, break_on_found,
                                  improved_alternate, launch_seq);
    launch_seq += static_cast<std::uint64_t>(phase.bfs_launches) + 1;
    long long launches_this_iteration = phase.bfs_launches;
    long long after = cardinality(m);
    bool retried = false;

    if (phase.augmenting_path_found && after <= before) {
      // A raced phase found a path but realized no augmentation; rerun the
      // whole phase serially, which always makes progress when one exists.
      PhaseResult retry =
          run_phase(g, m, grid, Schedule::serial(), kernel, break_on_found,
                    improved_alternate, launch_seq);
      launch_seq += static_cast<std::uint64_t>(retry.bfs_launches) + 1;
      launches_this_iteration += retry.bfs_launches;
      counters.columns_scanned += retry.columns_scanned;
      counters.alternations_attempted += retry.alternations_attempted;
      counters.fix_resets += retry.fix_resets;
      counters.serial_retries++;
      phase.augmenting_path_found = retry.augmenting_path_found;
      retried = true;
      after = cardinality(m);
    }

    counters.bfs_launches_per_iteration.push_back(launches_this_iteration);
    counters.columns_scanned += phase.columns_scanned;
    counters.alternations_attempted += phase.alternations_attempted;
    counters.fix_resets += phase.fix_resets;

    if (observer)
      observer(PhaseEvent{counters.outer_iterations,
                          phase.augmenting_path_found, before, after, retried,
                          launches_this_iteration, m});

    if (!phase.augmenting_path_found) break;
    before = after;
  }
  return {std::move(m), std::move(counters)};
}

}  // namespace

DriverResult apfb(const BipartiteCsr& g, MatchingState init,
                  const GridConfig& grid, const Schedule& schedule,
                  BfsKernel kernel, const PhaseObserver& observer) {
  return run_driver(g, std::move(init), grid, schedule, kernel, false, false,
                    observer);
}

DriverResult apsb(const BipartiteCsr& g, MatchingState init,
                  const GridConfig& grid, const Schedule& schedule,
                  BfsKernel kernel, bool improved_alternate,
                  const PhaseObserver& observer) {
  return run_driver(g, std::move(init), grid, schedule, kernel, true,
                    improved_alternate, observer);
}

}  // namespace bmatch
