#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bmatch {

// Element-wise accesses to phase state shared between virtual threads.
// Loads and stores of a single array element are indivisible; when several
// threads write the same element, exactly one of the written values remains.
inline int shared_load(const int& cell) {
  return std::atomic_ref<int>(const_cast<int&>(cell))
      .load(std::memory_order_relaxed);
}

inline void shared_store(int& cell, int value) {
  std::atomic_ref<int>(cell).store(value, std::memory_order_relaxed);
}

// Flags only move false -> true during a launch. The pre-check keeps an
// already-raised flag's cache line shared instead of bouncing it between
// cores on every redundant raise.
inline void raise_flag(int& flag) {
  std::atomic_ref<int> ref(flag);
  if (!ref.load(std::memory_order_relaxed))
    ref.store(1, std::memory_order_relaxed);
}

inline void count_event(long long& counter, long long delta = 1) {
  std::atomic_ref<long long>(counter).fetch_add(delta,
                                                std::memory_order_relaxed);
}

// Work-counter accumulator striped over padded slots. Virtual threads index
// by their position in [0, tot), so workers running disjoint tid blocks land
// on different cache lines; the total is read after the launch joins.
struct StripedCounter {
  static constexpr int kSlots = 8;
  struct alignas(64) Slot {
    long long value = 0;
  };
  Slot slots[kSlots];

  void add(long long pos, long long tot, long long delta) {
    auto& cell = slots[static_cast<int>(pos * kSlots / tot)].value;
    std::atomic_ref<long long>(cell).fetch_add(delta,
                                               std::memory_order_relaxed);
  }

  long long total() const {
    long long sum = 0;
    for (const auto& slot : slots) sum += slot.value;
    return sum;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class GridMode { Ct, Mt };

// Virtual thread-grid description. CT launches a fixed number of threads
// (256x256 by default) regardless of the graph; MT launches one thread per
// column, capped by the architecture limit.
struct GridConfig {
  GridMode mode = GridMode::Ct;
  int ct_thread_num = 65536;
  int max_threads = 65536;

  int threads_for(int nc) const {
    if (mode == GridMode::Ct) return std::max(1, ct_thread_num);
    return std::max(1, std::min(nc, max_threads));
  }

  std::string label() const { return mode == GridMode::Ct ? "ct" : "mt"; }
};

GridMode parse_grid_mode(const std::string& text);

enum class ScheduleKind { Serial, ShuffledSerial, Parallel };

// Execution order of the virtual threads in one launch. Serial runs tids
// ascending, ShuffledSerial runs them in a seeded random order, Parallel
// partitions them into `workers` contiguous tid blocks executed concurrently
// on at most hardware_concurrency OS threads.
struct Schedule {
  ScheduleKind kind = ScheduleKind::Serial;
  std::uint64_t seed = 0;
  int workers = 1;

  static Schedule serial() { return {}; }
  static Schedule shuffled(std::uint64_t seed) {
    return {ScheduleKind::ShuffledSerial, seed, 1};
  }
  static Schedule parallel(int workers = 0);

  std::string label() const;
};

Schedule parse_schedule(const std::string& text);

// Number of vertices a virtual thread processes when n vertices are split
// over tot_thread_num threads.
inline long long get_process_count(long long n, int tid, int tot_thread_num) {
  const long long base = n / tot_thread_num;
  return base + (tid < n % tot_thread_num ? 1 : 0);
}

// The i-th vertex assigned to tid; consecutive i differ by tot_thread_num so
// neighboring tids touch neighboring elements.
inline long long assigned_vertex(long long i, int tid, int tot_thread_num) {
  return i * tot_thread_num + tid;
}

// A fault raised by a kernel, tagged with the offending virtual thread.
struct KernelFault : std::runtime_error {
  int tid;
  KernelFault(int tid_, const std::string& message)
      : std::runtime_error("virtual thread " + std::to_string(tid_) + ": " +
                           message),
        tid(tid_) {}
};

namespace detail {

template <typename Kernel>
void run_one(const Kernel& kernel, int tid) {
  try {
    kernel(tid);
  } catch (const std::exception& e) {
    throw KernelFault(tid, e.what());
  } catch (...) {
    throw KernelFault(tid, "unknown fault");
  }
}

// Runs fn(block) for every block in [0, blocks), distributing blocks over
// the calling thread plus a persistent pool of hardware_concurrency - 1
// helper threads. Returns once every block has finished.
void run_blocks(int blocks, const std::function<void(int)>& fn);

}  // namespace detail

// Runs kernel(tid) exactly once for every tid in [0, tot_thread_num) under
// the schedule's ordering rules. launch_index perturbs the ShuffledSerial
// permutation so consecutive launches of one run use distinct orders while
// staying deterministic per seed.
template <typename Kernel>
void execute_kernel(const Kernel& kernel, int tot_thread_num,
                    const Schedule& schedule, std::uint64_t launch_index = 0) {
  if (tot_thread_num <= 0) return;
  switch (schedule.kind) {
    case ScheduleKind::Serial: {
      for (int tid = 0; tid < tot_thread_num; ++tid)
        detail::run_one(kernel, tid);
      return;
    }
    case ScheduleKind::ShuffledSerial: {
      std::vector<int> order(tot_thread_num);
      std::iota(order.begin(), order.end(), 0);
      std::mt19937_64 rng(splitmix64(schedule.seed ^
                                     splitmix64(launch_index + 1)));
      std::shuffle(order.begin(), order.end(), rng);
      for (int tid : order) detail::run_one(kernel, tid);
      return;
    }
    case ScheduleKind::Parallel: {
      // workers fixes the contiguous tid-block partition; the blocks are
      // claimed dynamically by the calling thread plus the persistent helper
      // pool. Running more OS threads than cores would only add scheduler
      // jitter at the per-launch barrier.
      int workers = schedule.workers;
      if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
      workers = std::min<long long>(workers, tot_thread_num);
      const long long per = tot_thread_num / workers;
      const long long extra = tot_thread_num % workers;
      std::exception_ptr fault;
      std::atomic<int> fault_tid{-1};
      detail::run_blocks(workers, [&](int block) {
        if (fault_tid.load(std::memory_order_relaxed) >= 0) return;
        const long long begin =
            block * per + std::min<long long>(block, extra);
        const long long end = begin + per + (block < extra ? 1 : 0);
        for (long long tid = begin; tid < end; ++tid) {
          try {
            kernel(static_cast<int>(tid));
          } catch (...) {
            int expected = -1;
            if (fault_tid.compare_exchange_strong(expected,
                                                  static_cast<int>(tid)))
              fault = std::current_exception();
            return;
          }
        }
      });
      if (fault_tid.load() >= 0) {
        try {
          std::rethrow_exception(fault);
        } catch (const std::exception& e) {
          throw KernelFault(fault_tid.load(), e.what());
        } catch (...) {
          throw KernelFault(fault_tid.load(), "unknown fault");
        }
      }
      return;
    }
  }
}

}  // namespace bmatch
