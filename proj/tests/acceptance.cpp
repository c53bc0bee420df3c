// Acceptance suite: runs every criterion at its stated tolerance and prints
// one [PASS]/[FAIL] line per criterion. Exits nonzero when any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/utsname.h>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bmatch/baselines.hpp"
#include "bmatch/bench.hpp"
#include "bmatch/csr_graph.hpp"
#include "bmatch/gpu_match.hpp"
#include "bmatch/matching.hpp"
#include "bmatch/matrix_market.hpp"

using namespace bmatch;
using nlohmann::json;

namespace {

int failures = 0;
json report;
std::vector<std::pair<int, std::string>> verdict_lines;

void verdict(int criterion, bool pass, const std::string& detail) {
  std::ostringstream line;
  line << '[' << (pass ? "PASS" : "FAIL") << "] criterion " << criterion
       << ": " << detail;
  verdict_lines.emplace_back(criterion, line.str());
  if (!pass) ++failures;
  report["criteria"][std::to_string(criterion)] = {{"pass", pass},
                                                   {"detail", detail}};
}

struct GpuConfig {
  const char* id;
  bool shortest;
  BfsKernel kernel;
  GridMode grid;
  bool improved;
};

constexpr GpuConfig kConfigs[8] = {
    {"apfb-gpubfs-ct", false, BfsKernel::Gpubfs, GridMode::Ct, false},
    {"apfb-gpubfs-mt", false, BfsKernel::Gpubfs, GridMode::Mt, false},
    {"apfb-wr-ct", false, BfsKernel::GpubfsWr, GridMode::Ct, false},
    {"apfb-wr-mt", false, BfsKernel::GpubfsWr, GridMode::Mt, false},
    {"apsb-gpubfs-ct", true, BfsKernel::Gpubfs, GridMode::Ct, false},
    {"apsb-gpubfs-mt", true, BfsKernel::Gpubfs, GridMode::Mt, false},
    {"apsb-wr-ct", true, BfsKernel::GpubfsWr, GridMode::Ct, true},
    {"apsb-wr-mt", true, BfsKernel::GpubfsWr, GridMode::Mt, true},
};

DriverResult run_config(const GpuConfig& cfg, const BipartiteCsr& g,
                        MatchingState init, const GridConfig& grid,
                        const Schedule& schedule,
                        const PhaseObserver& observer = {}) {
  return cfg.shortest ? apsb(g, std::move(init), grid, schedule, cfg.kernel,
                             cfg.improved, observer)
                      : apfb(g, std::move(init), grid, schedule, cfg.kernel,
                             observer);
}

struct Instance {
  BipartiteCsr graph;
  long long maximum = 0;  // brute force, cross-checked against HK
};

std::vector<Instance> build_corpus(int random_count) {
  std::vector<Instance> corpus;
  corpus.reserve(random_count + 4);

  auto add = [&](BipartiteCsr g) {
    Instance inst;
    inst.graph = std::move(g);
    corpus.push_back(std::move(inst));
  };

  const double degrees[4] = {1.0, 2.0, 4.0, 8.0};
  for (int i = 0; i < random_count; ++i) {
    const int nc = 1 + static_cast<int>(splitmix64(2 * i) % 200);
    const int nr = 1 + static_cast<int>(splitmix64(2 * i + 1) % 200);
    auto g = generate_random_bipartite(nc, nr, degrees[i % 4], 10'000 + i);
    g.name = "rand-" + std::to_string(i);
    add(std::move(g));
  }
  add(from_edge_list(0, 0, {}, "empty"));
  add(from_edge_list(7, 5, {}, "edgeless"));
  {
    std::vector<Edge> edges;
    for (int c = 0; c < 12; ++c)
      for (int r = 0; r < 9; ++r) edges.emplace_back(c, r);
    add(from_edge_list(12, 9, std::move(edges), "complete"));
  }
  add(from_edge_list(2, 3, {{0, 0}, {1, 0}, {1, 1}, {1, 2}}, "fork"));

  for (auto& inst : corpus) inst.maximum = brute_force_maximum(inst.graph);
  return corpus;
}

std::string cpu_model() {
  std::ifstream info("/proc/cpuinfo");
  std::string line;
  while (std::getline(info, line))
    if (line.starts_with("model name"))
      return line.substr(line.find(':') + 2);
  return "unknown";
}

json machine_spec() {
  utsname uts{};
  uname(&uts);
  return json{{"cpu", cpu_model()},
              {"hardware_threads", std::thread::hardware_concurrency()},
              {"kernel", std::string(uts.sysname) + " " + uts.release},
              {"arch", uts.machine}};
}

struct IterationSeries {
  std::vector<long long> apfb;
  std::vector<long long> apsb;
};

// Criteria 1-3 share one instrumented sweep over the corpus; the Serial
// iteration counts of the two -wr-ct configurations feed criterion 6.
IterationSeries run_corpus_criteria() {
  const int kRandomCount = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  const auto corpus = build_corpus(kRandomCount);

  long long oracle_mismatches = 0;
  long long hk_mismatches = 0;
  long long phase_violations = 0;
  long long bound_violations = 0;
  long long runs = 0;
  IterationSeries iterations;

  std::vector<Schedule> schedules;
  schedules.push_back(Schedule::serial());
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    schedules.push_back(Schedule::shuffled(seed));
  schedules.push_back(Schedule::parallel(4));

  // The constant-grid size is a configuration knob; 256 keeps its semantics
  // (thread count independent of nc and larger than every corpus nc) at a
  // desk-scale runtime. The 65536 default is exercised on a subsample below
  // and in the performance criterion.
  const int kCorpusCtThreads = 256;

  for (const auto& inst : corpus) {
    const auto& g = inst.graph;
    const long long hk_card =
        cardinality(hopcroft_karp(g, cheap_matching(g)));
    if (hk_card != inst.maximum) ++hk_mismatches;

    const MatchingState init = cheap_matching(g);
    for (const auto& cfg : kConfigs) {
      const GridConfig grid{cfg.grid, kCorpusCtThreads, 65536};
      for (const auto& schedule : schedules) {
        const bool serial = schedule.kind == ScheduleKind::Serial;
        const PhaseObserver observer = [&](const PhaseEvent& event) {
          if (!validate(g, event.state).ok()) ++phase_violations;
          if (event.cardinality_after < event.cardinality_before)
            ++phase_violations;
          if (serial && event.augmenting_path_found &&
              event.cardinality_after <= event.cardinality_before)
            ++phase_violations;
        };
        ++runs;
        try {
          const auto run = run_config(cfg, g, init, grid, schedule, observer);
          if (cardinality(run.matching) != inst.maximum) ++oracle_mismatches;
          if (run.counters.outer_iterations > g.nc + 1) ++bound_violations;
          if (serial && std::string(cfg.id) == "apfb-wr-ct")
            iterations.apfb.push_back(run.counters.outer_iterations);
          if (serial && std::string(cfg.id) == "apsb-wr-ct")
            iterations.apsb.push_back(run.counters.outer_iterations);
        } catch (const std::exception&) {
          ++bound_violations;
          ++oracle_mismatches;
        }
      }
    }
  }

  // Cover the default 65536-thread constant grid on a subsample.
  for (std::size_t i = 0; i < corpus.size(); i += 97) {
    const auto& inst = corpus[i];
    const MatchingState init = cheap_matching(inst.graph);
    for (const auto& cfg : kConfigs) {
      const GridConfig grid{cfg.grid, 65536, 65536};
      for (const auto& schedule :
           {Schedule::serial(), Schedule::parallel(4)}) {
        ++runs;
        const auto run = run_config(cfg, inst.graph, init, grid, schedule);
        if (cardinality(run.matching) != inst.maximum) ++oracle_mismatches;
      }
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  {
    std::ostringstream detail;
    detail << "oracle equivalence over " << corpus.size() << " instances, "
           << runs << " runs: " << oracle_mismatches
           << " cardinality mismatches, " << hk_mismatches
           << " brute-force/HK disagreements (" << elapsed << " s)";
    verdict(1, oracle_mismatches == 0 && hk_mismatches == 0 && elapsed < 300,
            detail.str());
  }
  {
    std::ostringstream detail;
    detail << "phase invariants (validity, no pending flags, monotone "
              "cardinality, serial strict progress): "
           << phase_violations << " violations";
    verdict(2, phase_violations == 0, detail.str());
  }
  {
    std::ostringstream detail;
    detail << "termination bound nc + 1: " << bound_violations
           << " violations";
    verdict(3, bound_violations == 0, detail.str());
  }
  return iterations;
}

void run_iteration_criterion(const IterationSeries& iterations) {
  std::size_t not_worse = 0;
  for (std::size_t i = 0; i < iterations.apfb.size(); ++i)
    if (iterations.apfb[i] <= iterations.apsb[i]) ++not_worse;
  const double fraction =
      iterations.apfb.empty()
          ? 0.0
          : static_cast<double>(not_worse) /
                static_cast<double>(iterations.apfb.size());

  // The per-phase launch trace for an arbitrary instance, an
  // iteration-indexed series.
  auto g = generate_random_bipartite(180, 180, 2.0, 31337);
  g.name = "trace-sample";
  const auto traced = apfb(g, cheap_matching(g), {GridMode::Ct, 256, 65536},
                           Schedule::serial(), BfsKernel::GpubfsWr);
  report["bfs_launch_trace"] = {
      {"instance", g.name},
      {"bfs_launches_per_iteration",
       traced.counters.bfs_launches_per_iteration}};

  std::ostringstream detail;
  detail << "augment-all converges in <= iterations of shortest-path on "
         << fraction * 100.0 << "% of " << iterations.apfb.size()
         << " instances (need >= 80%); launch trace emitted for '" << g.name
         << "'";
  verdict(6, fraction >= 0.80 &&
                 !traced.counters.bfs_launches_per_iteration.empty(),
          detail.str());
}

void run_dominance_criterion() {
  long long violations = 0;
  long long phases = 0;
  for (int i = 0; i < 100; ++i) {
    const int nc = 1 + static_cast<int>(splitmix64(9'000 + 2 * i) % 200);
    const int nr = 1 + static_cast<int>(splitmix64(9'001 + 2 * i) % 200);
    const double degree[] = {1.0, 2.0, 4.0, 8.0};
    const auto g =
        generate_random_bipartite(nc, nr, degree[i % 4], 77'000 + i);
    const GridConfig grid{GridMode::Ct, 256, 65536};
    MatchingState m = cheap_matching(g);
    for (;;) {
      MatchingState plain_copy = m;
      MatchingState wr_copy = m;
      const auto plain = run_phase(g, plain_copy, grid, Schedule::serial(),
                                   BfsKernel::Gpubfs, false, false);
      const auto wr = run_phase(g, wr_copy, grid, Schedule::serial(),
                                BfsKernel::GpubfsWr, false, false);
      ++phases;
      if (wr.columns_scanned > plain.columns_scanned) ++violations;
      m = std::move(plain_copy);
      if (!plain.augmenting_path_found) break;
    }
  }
  std::ostringstream detail;
  detail << "with-root early exit scans <= plain kernel in all " << phases
         << " phase snapshots: " << violations << " violations";
  verdict(5, violations == 0, detail.str());
}

void run_partition_criterion() {
  long long checked = 0;
  for (int n = 0; n <= 64; ++n)
    for (int tot = 1; tot <= 64; ++tot) {
      long long sum = 0;
      std::vector<char> hit(n, 0);
      for (int tid = 0; tid < tot; ++tid) {
        const long long cnt = get_process_count(n, tid, tot);
        sum += cnt;
        for (long long i = 0; i < cnt; ++i) {
          const long long v = assigned_vertex(i, tid, tot);
          if (v < 0 || v >= n || hit[v]) {
            verdict(4, false, "striding repeats or escapes [0, n)");
            return;
          }
          hit[v] = 1;
        }
      }
      if (sum != n) {
        verdict(4, false, "work split does not sum to n");
        return;
      }
      ++checked;
    }
  verdict(4, true,
          "work split and striding form a bijection for all " +
              std::to_string(checked) + " (n, tot) pairs with n, tot <= 64");
}

double burn(long long n) {
  volatile unsigned long long sink = 1;
  const auto t0 = std::chrono::steady_clock::now();
  unsigned long long x = 1;
  for (long long i = 0; i < n; ++i)
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
  sink = x;
  (void)sink;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Raw two-thread scaling of independent arithmetic loops; says whether the
// machine can run two threads concurrently right now, independent of any
// matching code.
double raw_two_thread_scaling() {
  constexpr long long kIters = 120'000'000;
  const double serial = burn(kIters);
  const auto t0 = std::chrono::steady_clock::now();
  std::thread a([] { burn(kIters / 2); });
  std::thread b([] { burn(kIters / 2); });
  a.join();
  b.join();
  const double par =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return serial / par;
}

void run_performance_criterion() {
  // Burst-limited hosts throttle multi-core throughput for tens of seconds
  // after sustained load (a full build, the corpus sweep). Wait, bounded,
  // for a window where two raw threads actually scale before timing the
  // matcher; every probe is recorded in the report.
  std::vector<double> probes;
  probes.push_back(raw_two_thread_scaling());
  const auto wait_start = std::chrono::steady_clock::now();
  while (probes.back() < 1.35 &&
         std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       wait_start)
                 .count() < 120.0) {
    std::this_thread::sleep_for(std::chrono::seconds(3));
    probes.push_back(raw_two_thread_scaling());
  }

  const auto g = generate_random_bipartite(200'000, 200'000, 6.0, 4242);
  const MatchingState init = cheap_matching(g);
  const GridConfig grid{GridMode::Ct, 65536, 65536};

  const auto time_run = [&](const Schedule& schedule, DriverResult* out) {
    const auto t0 = std::chrono::steady_clock::now();
    auto run = apfb(g, init, grid, schedule, BfsKernel::GpubfsWr);
    const auto t1 = std::chrono::steady_clock::now();
    if (out) *out = std::move(run);
    return std::chrono::duration<double>(t1 - t0).count();
  };

  // Minimum over repetitions on both sides; single-shot timings on this
  // class of machine swing with background load.
  constexpr int kReps = 7;
  std::vector<double> serial_reps, parallel_reps;
  DriverResult serial_run, parallel_run;
  for (int rep = 0; rep < kReps; ++rep) {
    serial_reps.push_back(time_run(Schedule::serial(), &serial_run));
    parallel_reps.push_back(time_run(Schedule::parallel(4), &parallel_run));
  }
  const double serial_s =
      *std::min_element(serial_reps.begin(), serial_reps.end());
  const double parallel_s =
      *std::min_element(parallel_reps.begin(), parallel_reps.end());
  const double speedup = serial_s / parallel_s;
  const bool cards_equal = cardinality(serial_run.matching) ==
                           cardinality(parallel_run.matching);
  const bool maximum = is_maximum(g, parallel_run.matching);

  report["performance_smoke"] = {
      {"machine", machine_spec()},
      {"instance",
       {{"nc", g.nc}, {"nr", g.nr}, {"edges", g.num_edges()}}},
      {"algorithm", "apfb-wr-ct"},
      {"schedule", "parallel:4 vs serial"},
      {"raw_two_thread_scaling_probes", probes},
      {"repetitions", kReps},
      {"serial_reps_s", serial_reps},
      {"parallel_reps_s", parallel_reps},
      {"serial_s", serial_s},
      {"parallel4_s", parallel_s},
      {"speedup", speedup},
      {"cardinality", cardinality(parallel_run.matching)}};

  std::ostringstream detail;
  detail << "apfb-wr-ct on " << g.num_edges()
         << " edges, min over " << kReps << " reps: parallel(4) " << parallel_s
         << " s (< 60), speedup over serial " << speedup
         << "x (>= 1.2), maximum=" << (maximum ? "yes" : "no");
  verdict(7, g.num_edges() >= 1'000'000 && parallel_s < 60.0 &&
              speedup >= 1.2 && cards_equal && maximum,
          detail.str());
}

void run_profile_criterion() {
  bool ok = true;
  std::ostringstream detail;

  const double g1[] = {1.0, 4.0};
  const double g2[] = {3.0};
  const double g3[] = {2.0, 2.0, 2.0};
  ok &= std::abs(geometric_mean(g1) - 2.0) <= 1e-12;
  ok &= std::abs(geometric_mean(g2) - 3.0) <= 1e-12;
  ok &= std::abs(geometric_mean(g3) - 2.0) <= 1e-12;

  auto rec = [](const char* inst, const char* algo, double t) {
    BenchRecord r;
    r.instance = inst;
    r.algorithm = algo;
    r.time_s = t;
    return r;
  };
  const auto y_at = [](const std::vector<ProfilePoint>& pts, double x) {
    for (const auto& p : pts)
      if (p.x == x) return p.y;
    return -1.0;
  };

  {
    const std::vector<BenchRecord> rs = {rec("a", "base", 2.0),
                                         rec("a", "tgt", 1.0),
                                         rec("b", "base", 4.0),
                                         rec("b", "tgt", 4.0)};
    const double grid[] = {0.0, 1.0};
    const auto pts = speedup_profile(rs, "base", "tgt", grid);
    ok &= y_at(pts, 0.0) == 1.0 && y_at(pts, 1.0) == 0.5;
  }
  {
    const std::vector<BenchRecord> rs = {rec("a", "base", 3.0),
                                         rec("a", "tgt", 3.0)};
    const double grid[] = {0.0, 0.01};
    const auto pts = speedup_profile(rs, "base", "tgt", grid);
    ok &= y_at(pts, 0.0) == 1.0 && y_at(pts, 0.01) == 0.0;
  }
  {
    const std::vector<BenchRecord> rs = {rec("a", "base", 8.0),
                                         rec("a", "tgt", 1.0)};
    const double grid[] = {3.0, 3.1};
    const auto pts = speedup_profile(rs, "base", "tgt", grid);
    ok &= y_at(pts, 3.0) == 1.0 && y_at(pts, 3.1) == 0.0;
  }
  {
    const std::vector<BenchRecord> rs = {rec("a", "A", 1.0), rec("a", "B", 2.0),
                                         rec("b", "A", 3.0),
                                         rec("b", "B", 1.0)};
    const auto prof = performance_profile(rs, {"A", "B"});
    ok &= y_at(prof.at("A"), 1.0) == 0.5 && y_at(prof.at("A"), 3.0) == 1.0;
    ok &= y_at(prof.at("B"), 1.0) == 0.5 && y_at(prof.at("B"), 2.0) == 1.0;
  }

  // Monotonicity over a real suite output.
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "bmatch_acceptance_suite";
  fs::create_directories(dir);
  std::vector<std::string> paths;
  for (int i = 0; i < 3; ++i) {
    const auto path = dir / ("inst" + std::to_string(i) + ".mtx");
    std::ofstream out(path);
    write_matrix_market(
        generate_random_bipartite(150 + 40 * i, 170, 3.0 + i, 99 + i), out);
    paths.push_back(path.string());
  }
  const auto suite = run_suite(paths, {"hk", "pfp", "apfb-wr-ct"}, {});
  ok &= suite.ok();
  std::vector<double> grid;
  for (double x = -6.0; x <= 6.0; x += 0.5) grid.push_back(x);
  const auto sp = speedup_profile(suite.records, "hk", "apfb-wr-ct", grid);
  for (std::size_t i = 1; i < sp.size(); ++i) ok &= sp[i].y <= sp[i - 1].y;
  for (const auto& p : sp) ok &= p.y >= 0.0 && p.y <= 1.0;
  const auto pp =
      performance_profile(suite.records, {"hk", "pfp", "apfb-wr-ct"});
  for (const auto& [id, pts] : pp) {
    for (std::size_t i = 1; i < pts.size(); ++i)
      ok &= pts[i].y >= pts[i - 1].y && pts[i].x > pts[i - 1].x;
    ok &= !pts.empty() && pts.back().y == 1.0;
  }

  detail << "geometric mean, speedup and performance profiles reproduce the "
            "hand examples and stay monotone on suite output";
  verdict(8, ok, detail.str());
}

}  // namespace

int main() {
  report["machine"] = machine_spec();
  // The timing criterion runs first, before the corpus sweep saturates both
  // cores for seconds and the machine derates.
  run_performance_criterion();
  const IterationSeries iterations = run_corpus_criteria();
  run_partition_criterion();
  run_dominance_criterion();
  run_iteration_criterion(iterations);
  run_profile_criterion();

  std::sort(verdict_lines.begin(), verdict_lines.end());
  for (const auto& [criterion, line] : verdict_lines)
    std::printf("%s\n", line.c_str());

  std::ofstream out("acceptance_report.json");
  out << report.dump(2) << '\n';
  std::printf("%s; report written to acceptance_report.json\n",
              failures == 0 ? "all criteria passed"
                            : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}
