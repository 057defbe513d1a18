// Serial reference vs OpenMP seed sweep on the apt-stealth scenario.

#include <benchmark/benchmark.h>

#include <numeric>

#include "ztrust/scenario_io.hpp"
#include "ztrust/sweep.hpp"

namespace {

const ztrust::Scenario& scenario() {
  static const auto sc = ztrust::to_scenario(ztrust::load_scenario_file(ZTRUST_SOURCE_DIR "/scenarios/apt-stealth.json"));
  return sc;
}

std::vector<std::uint64_t> seeds(std::int64_t n) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto s = seeds(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ztrust::run_sweep_serial(scenario(), s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto s = seeds(state.range(0));
  ztrust::SweepOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ztrust::run_sweep(scenario(), s, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->ArgsProduct({{16, 64}, {0, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
