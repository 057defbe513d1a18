#include "ztrust/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace ztrust {

namespace {

SweepRun run_one(const Scenario& scenario, std::uint64_t seed, bool keep_trace) {
  Scenario local = scenario;
  local.seed = seed;
  SweepRun r;
  r.seed = seed;
  r.trace = run(local);
  r.metrics = compute_metrics(local, r.trace);
  if (!keep_trace) r.trace.records.clear();
  r.trace.seed = seed;
  return r;
}

}  // namespace

std::vector<SweepRun> run_sweep(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                                const SweepOptions& options) {
  scenario.validate();
  std::vector<SweepRun> out(seeds.size());
  std::exception_ptr failure;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  const long n = static_cast<long>(seeds.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_one(scenario, seeds[static_cast<std::size_t>(i)], options.keep_traces);
    } catch (...) {
#pragma omp critical(ztrust_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SweepRun> run_sweep_serial(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                                       const SweepOptions& options) {
  scenario.validate();
  std::vector<SweepRun> out;
  out.reserve(seeds.size());
  for (auto seed : seeds) out.push_back(run_one(scenario, seed, options.keep_traces));
  return out;
}

FinalScorePools pool_final_scores(const std::vector<SweepRun>& runs) {
  FinalScorePools pools;
  for (const auto& run : runs)
    for (const auto& e : run.metrics.entities)
      (e.trusted_type ? pools.trusted : pools.adversarial).push_back(e.final_score);
  return pools;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace ztrust
