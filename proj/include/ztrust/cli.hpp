#pragma once

// Command-line entry points:
//   ztrust run   --scenario <path|name> [--seed N | --seeds A..B] [--out <path>] [--metrics <path>]
//   ztrust solve --game <path|name> [--mode pure|mixed] [--off-path uniform|prior|pessimistic] [--out <path>]
//
// Exit codes: 0 success, 1 validation error, 2 runtime error, 3 enumeration
// budget exceeded.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

namespace ztrust::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kRuntimeFailure = 2, kBudgetExceeded = 3 };

struct RunArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> seeds;  // "A..B", inclusive
  std::string out;
  std::string metrics;
  int threads = 0;
};

struct SolveArgs {
  std::string game;
  std::string mode = "mixed";
  std::string off_path = "uniform";
  std::string out;
};

int cli_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cli_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a subcommand.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// A bare name such as "apt-stealth" resolves to <data dir>/<subdir>/<name>.json
// when no file of that name exists. The data dir is $ZTRUST_DATA_DIR or the
// source tree.
std::string resolve_data_path(const std::string& arg, const std::string& subdir);

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

}  // namespace ztrust::cli
