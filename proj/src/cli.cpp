#include "bmatch/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmatch/algorithms.hpp"
#include "bmatch/bench.hpp"
#include "bmatch/matching.hpp"
#include "bmatch/matrix_market.hpp"

namespace bmatch {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCorrectness = 1;
constexpr int kExitUsage = 2;

AlgorithmOptions algorithm_options_from_env() {
  AlgorithmOptions options;
  if (const char* cap = std::getenv("BMATCH_THREAD_CAP")) {
    const int value = std::atoi(cap);
    if (value > 0) {
      options.ct_thread_num = value;
      options.max_threads = value;
    }
  }
  return options;
}

struct MatchArgs {
  std::string graph_path;
  std::string algo = "apfb-wr-ct";
  std::string grid = "ct";
  std::string schedule = "parallel";
  std::optional<std::uint64_t> permute_seed;
  bool counters = false;
  std::string dump_path;
};

int cmd_match(const MatchArgs& args, std::ostream& out, std::ostream& err) {
  AlgorithmOptions options = algorithm_options_from_env();
  Schedule schedule;
  try {
    options.default_grid = parse_grid_mode(args.grid);
    schedule = parse_schedule(args.schedule);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto algorithm = make_algorithm(args.algo, options);
  if (!algorithm) {
    err << "error: unknown algorithm '" << args.algo << "'\n";
    return kExitUsage;
  }

  BipartiteCsr g;
  try {
    g = load_matrix_market(args.graph_path);
    if (args.permute_seed) g = permute_random(g, *args.permute_seed);
  } catch (const std::exception& e) {
    err << "error: " << args.graph_path << ": " << e.what() << '\n';
    return kExitUsage;
  }

  const MatchingState init = cheap_matching(g);
  const auto t0 = std::chrono::steady_clock::now();
  AlgorithmResult result = (*algorithm)(g, init, schedule);
  const auto t1 = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(t1 - t0).count();

  out << "cardinality=" << cardinality(result.matching)
      << " time_s=" << seconds << '\n';
  if (args.counters)
    out << (result.counters ? counters_json(*result.counters) : "{}") << '\n';
  if (!args.dump_path.empty()) {
    std::ofstream dump(args.dump_path);
    if (!dump) {
      err << "error: cannot write '" << args.dump_path << "'\n";
      return kExitUsage;
    }
    write_matching(result.matching, dump);
  }
  return kExitOk;
}

int cmd_verify(const std::string& graph_path, const std::string& dump_path,
               std::ostream& out, std::ostream& err) {
  BipartiteCsr g;
  MatchingState m;
  try {
    g = load_matrix_market(graph_path);
  } catch (const std::exception& e) {
    err << "error: " << graph_path << ": " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::ifstream dump(dump_path);
    if (!dump) throw std::runtime_error("cannot open '" + dump_path + "'");
    m = read_matching(g.nc, g.nr, dump);
  } catch (const std::exception& e) {
    err << "error: " << dump_path << ": " << e.what() << '\n';
    return kExitUsage;
  }

  const ValidityReport report = validate(g, m);
  if (!report.ok()) {
    for (const auto& violation : report.violations)
      out << violation.describe() << '\n';
    return kExitCorrectness;
  }
  if (!is_maximum(g, m)) {
    out << "augmenting path exists\n";
    return kExitCorrectness;
  }
  out << "valid maximum matching, cardinality=" << cardinality(m) << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string manifest_path;
  std::string algos;
  int repetitions = 3;
  std::optional<std::uint64_t> permute_seed;
  std::string out_dir = "bench_out";
  std::string profiles;  // "baseline=<id>"
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ','))
    if (!part.empty()) parts.push_back(part);
  return parts;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> paths;
  try {
    std::ifstream manifest(args.manifest_path);
    if (!manifest)
      throw std::runtime_error("cannot open '" + args.manifest_path + "'");
    paths = read_manifest(manifest);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::vector<std::string> algorithms = split_commas(args.algos);
  if (algorithms.empty()) {
    err << "error: --algos lists no algorithms\n";
    return kExitUsage;
  }
  std::string baseline;
  if (!args.profiles.empty()) {
    if (!args.profiles.starts_with("baseline=")) {
      err << "error: --profiles expects baseline=<id>\n";
      return kExitUsage;
    }
    baseline = args.profiles.substr(std::string("baseline=").size());
  }

  SuiteOptions options;
  options.repetitions = args.repetitions;
  options.permute_seed = args.permute_seed;
  options.schedule = Schedule::serial();
  options.algorithms = algorithm_options_from_env();

  SuiteResult suite;
  try {
    suite = run_suite(paths, algorithms, options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& failure : suite.load_errors)
    err << "warning: " << failure << '\n';

  namespace fs = std::filesystem;
  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: cannot create '" << args.out_dir << "'\n";
    return kExitUsage;
  }

  {
    std::ofstream csv(dir / "records.csv");
    write_records_csv(suite.records, csv);
    std::ofstream json(dir / "records.json");
    write_records_json(suite.records, json);
  }
  {
    std::ofstream csv(dir / "geomean.csv");
    csv << "algorithm,geomean_time_s\n";
    for (const auto& id : algorithms) {
      std::vector<double> times;
      for (const auto& rec : suite.records)
        if (rec.algorithm == id && rec.time_s > 0) times.push_back(rec.time_s);
      if (!times.empty()) csv << id << ',' << geometric_mean(times) << '\n';
    }
  }
  try {
    const auto profiles = performance_profile(suite.records, algorithms);
    std::ofstream csv(dir / "perf_profile.csv");
    csv << "algorithm,x,y\n";
    for (const auto& [id, points] : profiles)
      for (const auto& p : points)
        csv << id << ',' << p.x << ',' << p.y << '\n';
  } catch (const std::exception& e) {
    err << "warning: performance profile skipped: " << e.what() << '\n';
  }
  if (!baseline.empty()) {
    std::vector<double> x_grid;
    for (double x = -8.0; x <= 8.0; x += 0.25) x_grid.push_back(x);
    for (const auto& id : algorithms) {
      if (id == baseline) continue;
      const auto points =
          speedup_profile(suite.records, baseline, id, x_grid, nullptr);
      std::ofstream csv(dir / ("speedup_" + id + "_vs_" + baseline + ".csv"));
      csv << "x,y\n";
      for (const auto& p : points) csv << p.x << ',' << p.y << '\n';
    }
  }

  out << "instances=" << paths.size() << " records=" << suite.records.size()
      << " load_errors=" << suite.load_errors.size() << '\n';
  if (!suite.ok()) {
    for (const auto& instance : suite.mismatches)
      err << "cardinality mismatch on " << instance << '\n';
    return kExitCorrectness;
  }
  return kExitOk;
}

struct GenArgs {
  int nc = 0;
  int nr = 0;
  double deg = 4.0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_gen(const GenArgs& args, std::ostream& err) {
  const BipartiteCsr g =
      generate_random_bipartite(args.nc, args.nr, args.deg, args.seed);
  std::ofstream out(args.out_path);
  if (!out) {
    err << "error: cannot write '" << args.out_path << "'\n";
    return kExitUsage;
  }
  write_matrix_market(g, out);
  return out ? kExitOk : kExitUsage;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"bipartite maximum-cardinality matching toolkit"};
  app.require_subcommand(1);

  MatchArgs match_args;
  auto* match = app.add_subcommand(
      "match", "compute a maximum matching for one Matrix Market instance");
  match->add_option("graph", match_args.graph_path, "input .mtx file")
      ->required();
  match->add_option("--algo", match_args.algo, "algorithm identifier");
  match->add_option("--grid", match_args.grid,
                    "grid mode for suffixless identifiers (ct|mt)");
  match->add_option("--schedule", match_args.schedule,
                    "serial | shuffled:<seed> | parallel:<workers>");
  match->add_option("--seed-permute", match_args.permute_seed,
                    "permute rows and columns with this seed first");
  match->add_flag("--counters", match_args.counters,
                  "print work counters as JSON");
  match->add_option("--dump", match_args.dump_path,
                    "write the matching to this file");

  std::string verify_graph, verify_dump;
  auto* verify = app.add_subcommand(
      "verify", "check that a matching dump is valid and maximum");
  verify->add_option("graph", verify_graph, "input .mtx file")->required();
  verify->add_option("matching", verify_dump, "matching dump file")
      ->required();

  BenchArgs bench_args;
  auto* bench =
      app.add_subcommand("bench", "run a benchmark suite from a manifest");
  bench->add_option("manifest", bench_args.manifest_path,
                    "text file with one graph path per line")
      ->required();
  bench->add_option("--algos", bench_args.algos,
                    "comma-separated algorithm identifiers")
      ->required();
  bench->add_option("--reps", bench_args.repetitions,
                    "repetitions per measurement (minimum is kept)");
  bench->add_option("--permute", bench_args.permute_seed,
                    "permute every instance with this seed");
  bench->add_option("--out", bench_args.out_dir, "output directory");
  bench->add_option("--profiles", bench_args.profiles,
                    "baseline=<id> enables speedup profiles");

  GenArgs gen_args;
  auto* gen =
      app.add_subcommand("gen", "generate a random bipartite pattern file");
  gen->add_option("--nc", gen_args.nc, "column vertex count")->required();
  gen->add_option("--nr", gen_args.nr, "row vertex count")->required();
  gen->add_option("--deg", gen_args.deg, "average column degree");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out_path, "output .mtx path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (match->parsed()) return cmd_match(match_args, out, err);
    if (verify->parsed()) return cmd_verify(verify_graph, verify_dump, out, err);
    if (bench->parsed()) return cmd_bench(bench_args, out, err);
    if (gen->parsed()) return cmd_gen(gen_args, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace bmatch
