#include "ztrust/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <vector>

#include "CLI11.hpp"
#include "ztrust/error.hpp"
#include "ztrust/game_io.hpp"
#include "ztrust/scenario_io.hpp"
#include "ztrust/sweep.hpp"
#include "ztrust/trace_io.hpp"

#ifndef ZTRUST_DATA_DIR
#define ZTRUST_DATA_DIR "."
#endif

namespace ztrust::cli {

namespace fs = std::filesystem;

std::string resolve_data_path(const std::string& arg, const std::string& subdir) {
  if (fs::exists(arg)) return arg;
  std::vector<fs::path> roots;
  if (const char* env = std::getenv("ZTRUST_DATA_DIR")) roots.emplace_back(env);
  roots.emplace_back(ZTRUST_DATA_DIR);
  for (const auto& root : roots) {
    for (const auto& candidate : {root / subdir / (arg + ".json"), root / subdir / arg}) {
      if (fs::exists(candidate)) return candidate.string();
    }
  }
  return arg;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw ValidationError("--seeds", "expected A..B, got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const auto lo = std::stoull(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const auto hi = std::stoull(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (hi < lo) throw ValidationError("--seeds", "range end is below range start");
    return {lo, hi};
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("--seeds", "expected A..B with non-negative integers, got '" + text + "'");
  }
}

namespace {

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : stream_(path, std::ios::binary | std::ios::trunc) {
    if (!stream_) throw Error("cannot open output file '" + path + "'");
  }
  std::ostream& get() { return stream_; }

 private:
  std::ofstream stream_;
};

void print_summary(std::ostream& out, const Metrics& m, std::uint64_t seed) {
  std::size_t detected = 0, lockouts = 0;
  for (const auto& e : m.entities) {
    if (e.time_to_detection) ++detected;
    if (e.false_lockout) ++lockouts;
  }
  out << "seed " << seed << ": " << m.entities.size() << " entities, " << detected << " detected, " << lockouts
      << " false lockouts\n";
}

int run_impl(const RunArgs& args, std::ostream& out, std::ostream& err) {
  const std::string path = resolve_data_path(args.scenario, "scenarios");
  if (!fs::exists(path)) {
    err << "error: scenario file not found: " << args.scenario << "\n";
    return kValidationFailure;
  }
  Scenario scenario = to_scenario(load_scenario_file(path));
  if (args.seed && args.seeds) throw ValidationError("--seed", "cannot be combined with --seeds");
  if (args.seed) scenario.seed = *args.seed;

  if (args.seeds) {
    auto [lo, hi] = parse_seed_range(*args.seeds);
    std::vector<std::uint64_t> seeds;
    for (auto s = lo;; ++s) {
      seeds.push_back(s);
      if (s == hi) break;
    }
    SweepOptions opts;
    opts.keep_traces = !args.out.empty();
    opts.threads = args.threads;
    const auto runs = run_sweep(scenario, seeds, opts);
    if (!args.out.empty()) {
      OutputFile f(args.out);
      for (const auto& r : runs) emit_trace(r.trace, f.get());
    }
    if (!args.metrics.empty()) {
      OutputFile f(args.metrics);
      std::size_t n = 0;
      for (const auto& r : runs) write_line(f.get(), metrics_line(r.metrics, r.seed, scenario.horizon), n++);
    }
    const auto pools = pool_final_scores(runs);
    out << runs.size() << " runs over seeds " << lo << ".." << hi << "\n";
    out << std::setprecision(6);
    if (!pools.trusted.empty()) out << "median final score (trusted types): " << median(pools.trusted) << "\n";
    if (!pools.adversarial.empty())
      out << "median final score (adversarial types): " << median(pools.adversarial) << "\n";
    return kOk;
  }

  const SimTrace trace = run(scenario);
  const Metrics metrics = compute_metrics(scenario, trace);
  if (args.out.empty()) {
    emit_trace(trace, out);
  } else {
    OutputFile f(args.out);
    emit_trace(trace, f.get());
    print_summary(out, metrics, scenario.seed);
  }
  if (!args.metrics.empty()) {
    OutputFile f(args.metrics);
    write_line(f.get(), metrics_line(metrics, scenario.seed, scenario.horizon), 0);
  }
  return kOk;
}

int solve_impl(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const std::string path = resolve_data_path(args.game, "games");
  if (!fs::exists(path)) {
    err << "error: game file not found: " << args.game << "\n";
    return kValidationFailure;
  }
  CommitmentMode mode;
  OffPathRule rule;
  try {
    mode = parse_commitment_mode(args.mode);
  } catch (const DomainError& e) {
    throw ValidationError("--mode", e.what());
  }
  try {
    rule = parse_off_path_rule(args.off_path);
  } catch (const DomainError& e) {
    throw ValidationError("--off-path", e.what());
  }
  const GameSpec game = load_game_file(path);

  std::string line;
  if (const auto* g = std::get_if<MatrixGame>(&game)) {
    line = zero_sum_line(*g, solve_zero_sum(*g));
  } else if (const auto* g = std::get_if<BimatrixGame>(&game)) {
    line = stackelberg_line(*g, mode, solve_stackelberg(*g, mode));
  } else if (const auto* g = std::get_if<BayesianGameSpec>(&game)) {
    line = bne_line(*g, find_bne(*g));
  } else if (const auto* g = std::get_if<SignalingGameSpec>(&game)) {
    line = pbe_line(*g, rule, find_pbe(*g, rule));
  }
  write_line(out, line, 0);
  if (!args.out.empty()) {
    OutputFile f(args.out);
    write_line(f.get(), line, 0);
  }
  return kOk;
}

template <typename F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const EnumerationBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
}

}  // namespace

int cli_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return guarded([&] { return run_impl(args, out, err); }, err);
}

int cli_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded([&] { return solve_impl(args, out, err); }, err);
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-trust trust evaluation simulator and game solvers", "ztrust"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::uint64_t seed = 0;
  std::string seeds;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its trace");
  run_cmd->add_option("--scenario", run_args.scenario, "Scenario file or shipped scenario name")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed");
  auto* seeds_opt = run_cmd->add_option("--seeds", seeds, "Batch over seeds A..B (inclusive), run concurrently");
  run_cmd->add_option("--out", run_args.out, "Trace output path (stdout when omitted)");
  run_cmd->add_option("--metrics", run_args.metrics, "Metrics output path");
  run_cmd->add_option("--threads", run_args.threads, "Worker threads for --seeds (0: default)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a game specification");
  solve_cmd->add_option("--game", solve_args.game, "Game file or shipped game name")->required();
  solve_cmd->add_option("--mode", solve_args.mode, "Stackelberg commitment: pure or mixed");
  solve_cmd->add_option("--off-path", solve_args.off_path, "PBE off-path beliefs: uniform, prior, pessimistic");
  solve_cmd->add_option("--out", solve_args.out, "Also write the result record to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationFailure;
  }

  if (*run_cmd) {
    if (seed_opt->count() > 0) run_args.seed = seed;
    if (seeds_opt->count() > 0) run_args.seeds = seeds;
    return cli_run(run_args, out, err);
  }
  return cli_solve(solve_args, out, err);
}

}  // namespace ztrust::cli
