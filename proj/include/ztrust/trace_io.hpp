#pragma once

// Newline-delimited JSON output. Every line is one object whose first two
// keys are "schema" and "kind"; key order within each kind is fixed.
//
//   step:    schema kind seed tick entity decision action evidence score_before score_after
//   metrics: schema kind seed horizon entities[] summary
//   solver results: schema kind game ... (see serializers below)

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ztrust/bayesian_game.hpp"
#include "ztrust/signaling.hpp"
#include "ztrust/simulator.hpp"
#include "ztrust/stackelberg.hpp"
#include "ztrust/zero_sum.hpp"

namespace ztrust {

inline constexpr const char* kTraceSchema = "ztrust.trace/1";

std::string step_record_line(const StepRecord& record, std::uint64_t seed);

// Writes one line per record. Returns the count written; throws SinkError
// carrying the partial count if the stream fails.
std::size_t emit_trace(const std::vector<StepRecord>& records, std::uint64_t seed, std::ostream& sink);
std::size_t emit_trace(const SimTrace& trace, std::ostream& sink);

std::string metrics_line(const Metrics& metrics, std::uint64_t seed, std::int64_t horizon);

std::string zero_sum_line(const MatrixGame& game, const ZeroSumSolution& sol);
std::string stackelberg_line(const BimatrixGame& game, CommitmentMode mode, const SSEResult& sol);
std::string bne_line(const BayesianGameSpec& spec, const std::vector<BayesianStrategy>& equilibria);
std::string pbe_line(const SignalingGameSpec& spec, OffPathRule rule, const std::vector<PBEResult>& equilibria);

// Writes a pre-rendered line, throwing SinkError(written) on failure.
void write_line(std::ostream& sink, const std::string& line, std::size_t written);

}  // namespace ztrust
