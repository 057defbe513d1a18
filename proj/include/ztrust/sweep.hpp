#pragma once

// Seed sweeps: independent simulation runs of one scenario under a range of
// seeds. The OpenMP kernel and the serial reference must produce identical
// results; each run owns its own state and random streams.

#include <cstdint>
#include <vector>

#include "ztrust/simulator.hpp"

namespace ztrust {

struct SweepRun {
  std::uint64_t seed = 0;
  SimTrace trace;
  Metrics metrics;
};

struct SweepOptions {
  bool keep_traces = false;
  int threads = 0;  // 0: OpenMP default
};

std::vector<SweepRun> run_sweep(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                                const SweepOptions& options = {});

std::vector<SweepRun> run_sweep_serial(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                                       const SweepOptions& options = {});

// Final after-scores pooled across runs, split by whether the entity's true
// type is trusted.
struct FinalScorePools {
  std::vector<double> trusted;
  std::vector<double> adversarial;
};
FinalScorePools pool_final_scores(const std::vector<SweepRun>& runs);

double median(std::vector<double> values);

}  // namespace ztrust
