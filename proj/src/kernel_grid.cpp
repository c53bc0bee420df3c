#include "bmatch/kernel_grid.hpp"

#include <condition_variable>
#include <mutex>

namespace bmatch {

namespace detail {

namespace {

thread_local bool inside_pool = false;

// Persistent helper threads. Launches come every few hundred microseconds
// during a driver run, so helpers spin on the generation counter for a short
// window before parking on the condition variable; a futex wake of a parked
// thread can cost a schedule quantum on a virtualized host. Completion is
// acknowledged per generation: the caller waits until every helper has both
// seen the launch and drained it, so a late helper can never observe a newer
// launch with stale state.
class WorkerPool {
 public:
  static WorkerPool& instance() {
    static WorkerPool pool;
    return pool;
  }

  void run(int blocks, const std::function<void(int)>& fn) {
    if (blocks <= 1 || width_ <= 1 || inside_pool) {
      for (int b = 0; b < blocks; ++b) fn(b);
      return;
    }
    std::lock_guard<std::mutex> serialize(launch_mutex_);
    fn_ = &fn;
    blocks_ = blocks;
    acked_.store(0, std::memory_order_relaxed);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      generation_.fetch_add(1, std::memory_order_release);
    }
    work_cv_.notify_all();
    // Static round-robin block assignment keeps each block's data in the
    // same core's cache across consecutive launches.
    for (int b = 0; b < blocks; b += width_) fn(b);
    const int want = width_ - 1;
    for (long long spins = 0;
         acked_.load(std::memory_order_acquire) != want; ++spins) {
      if (spins > 1'000'000) {
        std::this_thread::yield();
        spins = 0;
      }
    }
    fn_ = nullptr;
  }

 private:
  WorkerPool()
      : width_(static_cast<int>(
            std::max(1u, std::thread::hardware_concurrency()))) {
    for (int i = 0; i + 1 < width_; ++i)
      helpers_.emplace_back([this, i] { helper_main(i); });
  }

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      shutdown_.store(true, std::memory_order_relaxed);
    }
    work_cv_.notify_all();
    for (auto& t : helpers_) t.join();
  }

  void helper_main(int self) {
    inside_pool = true;
    std::uint64_t seen = 0;
    for (;;) {
      std::uint64_t current = generation_.load(std::memory_order_acquire);
      for (long long spins = 0; current == seen; ++spins) {
        if (shutdown_.load(std::memory_order_relaxed)) return;
        if (spins > kSpinLimit) {
          std::unique_lock<std::mutex> lock(mutex_);
          work_cv_.wait(lock, [&] {
            return shutdown_.load(std::memory_order_relaxed) ||
                   generation_.load(std::memory_order_relaxed) != seen;
          });
          if (shutdown_.load(std::memory_order_relaxed)) return;
        }
        current = generation_.load(std::memory_order_acquire);
      }
      seen = current;
      const auto* fn = fn_;
      const int blocks = blocks_;
      for (int b = self + 1; b < blocks; b += width_) (*fn)(b);
      acked_.fetch_add(1, std::memory_order_release);
    }
  }

  static constexpr long long kSpinLimit = 4'000'000;  // a few ms of spinning

  const int width_;  // caller plus helpers; fixed before any thread starts
  std::vector<std::thread> helpers_;
  std::mutex launch_mutex_;
  std::mutex mutex_;
  std::condition_variable work_cv_;
  const std::function<void(int)>* fn_ = nullptr;
  int blocks_ = 0;
  std::atomic<int> acked_{0};
  std::atomic<std::uint64_t> generation_{0};
  std::atomic<bool> shutdown_{false};
};

}  // namespace

void run_blocks(int blocks, const std::function<void(int)>& fn) {
  WorkerPool::instance().run(blocks, fn);
}

}  // namespace detail

GridMode parse_grid_mode(const std::string& text) {
  if (text == "ct") return GridMode::Ct;
  if (text == "mt") return GridMode::Mt;
  throw std::invalid_argument("unknown grid mode '" + text +
                              "' (expected ct or mt)");
}

Schedule Schedule::parallel(int workers) {
  if (workers <= 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  return {ScheduleKind::Parallel, 0, workers};
}

std::string Schedule::label() const {
  switch (kind) {
    case ScheduleKind::Serial:
      return "serial";
    case ScheduleKind::ShuffledSerial:
      return "shuffled:" + std::to_string(seed);
    case ScheduleKind::Parallel:
      return "parallel:" + std::to_string(workers);
  }
  return "serial";
}

Schedule parse_schedule(const std::string& text) {
  if (text == "serial") return Schedule::serial();
  if (text == "parallel") return Schedule::parallel();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "shuffled" && !arg.empty())
      return Schedule::shuffled(std::stoull(arg));
    if (head == "parallel" && !arg.empty())
      return Schedule::parallel(std::stoi(arg));
  } catch (const std::exception&) {
    // fall through to the error below
  }
  throw std::invalid_argument(
      "unknown schedule '" + text +
      "' (expected serial, shuffled:<seed> or parallel:<workers>)");
}

}  // namespace bmatch
