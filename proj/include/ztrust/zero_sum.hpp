#pragma once

// Two-player zero-sum matrix games: exact minimax by linear programming, a
// support-enumeration reference solver, fictitious play, and alternating
// pure best-response dynamics.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ztrust/matrix.hpp"

namespace ztrust {

inline constexpr double kEquilibriumTolerance = 1e-9;

// Row player maximizes `payoff`; the column player receives its negation.
struct MatrixGame {
  Matrix payoff;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  // Checks dimensions, labels, and finiteness. Throws DomainError.
  void validate() const;
  static MatrixGame from(Matrix payoff);
};

struct MixedStrategy {
  std::vector<double> weights;

  // Throws DomainError unless weights form a probability vector.
  void validate() const;
  static MixedStrategy pure(std::size_t n, std::size_t index);
  static MixedStrategy uniform(std::size_t n);
  std::vector<std::size_t> support(double tol = kEquilibriumTolerance) const;
};

struct ZeroSumSolution {
  double value = 0.0;
  MixedStrategy row;
  MixedStrategy col;
};

// Row payoff vector A*y and column payoff vector x^T*A.
std::vector<double> row_payoffs(const Matrix& a, const MixedStrategy& col);
std::vector<double> col_payoffs(const Matrix& a, const MixedStrategy& row);

// Largest gap between the strategies' guaranteed values and `value`:
// max(value - min_j (x^T A)_j, max_i (A y)_i - value). Zero means exact.
double minimax_certificate_gap(const Matrix& a, const ZeroSumSolution& sol);

// LP formulation solved with the in-tree simplex.
ZeroSumSolution solve_zero_sum(const MatrixGame& game);

// Reference solver: enumerates equal-size support pairs and solves the
// indifference system on each. Intended for games up to 4x4.
ZeroSumSolution solve_zero_sum_support_enumeration(const MatrixGame& game);

struct FictitiousPlayStep {
  std::size_t iteration = 0;
  MixedStrategy row;
  MixedStrategy col;
  double lower = 0.0;  // min_j (x^T A)_j for the empirical row mix
  double upper = 0.0;  // max_i (A y)_i for the empirical column mix
};

struct FictitiousPlayResult {
  std::vector<FictitiousPlayStep> trace;
  FictitiousPlayStep final;
  // Tightest bounds seen over the whole run.
  double best_lower = 0.0;
  double best_upper = 0.0;
  bool converged = false;
};

struct FictitiousPlayOptions {
  std::size_t max_iters = 100000;
  double tolerance = 1e-3;
  // Record every n-th iteration in the trace (the final one is always kept).
  std::size_t trace_stride = 1;
};

FictitiousPlayResult fictitious_play(const MatrixGame& game, const FictitiousPlayOptions& options);

enum class Termination { kConverged, kCycleDetected, kBudgetExhausted };
std::string to_string(Termination t);

using PureProfile = std::pair<std::size_t, std::size_t>;

struct BestResponseTrace {
  std::vector<PureProfile> profiles;
  Termination termination = Termination::kBudgetExhausted;
  // Closed cycle (first profile repeated at the end) when a cycle is detected.
  std::vector<PureProfile> cycle;
};

// Row player moves first, then the column player, alternating. Each move is an
// exact pure best response with ties broken toward the lowest index.
BestResponseTrace alternate_best_response(const MatrixGame& game, PureProfile start,
                                          std::size_t max_iters);

// Argmax over rows of A(:, col) / argmin over columns of A(row, :); lowest index on ties.
std::size_t row_best_response(const Matrix& a, std::size_t col);
std::size_t col_best_response(const Matrix& a, std::size_t row);

}  // namespace ztrust
