#include "ztrust/stackelberg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

#include "ztrust/error.hpp"
#include "ztrust/simplex.hpp"

namespace ztrust {

void BimatrixGame::validate() const {
  if (leader_payoff.rows() == 0 || leader_payoff.cols() == 0)
    throw DomainError("bimatrix game needs at least one row and column");
  if (leader_payoff.rows() != follower_payoff.rows() || leader_payoff.cols() != follower_payoff.cols())
    throw DomainError("leader and follower payoff matrices differ in shape");
  if (!leader_payoff.all_finite() || !follower_payoff.all_finite())
    throw DomainError("bimatrix game has non-finite payoffs");
  if (row_labels.size() != leader_payoff.rows() || col_labels.size() != leader_payoff.cols())
    throw DomainError("bimatrix game labels do not match payoff dimensions");
}

BimatrixGame BimatrixGame::from(Matrix leader, Matrix follower) {
  BimatrixGame g{std::move(leader), std::move(follower), {}, {}};
  for (std::size_t i = 0; i < g.leader_payoff.rows(); ++i) g.row_labels.push_back("r" + std::to_string(i + 1));
  for (std::size_t j = 0; j < g.leader_payoff.cols(); ++j) g.col_labels.push_back("c" + std::to_string(j + 1));
  return g;
}

std::string to_string(CommitmentMode mode) {
  return mode == CommitmentMode::kPure ? "pure" : "mixed";
}

CommitmentMode parse_commitment_mode(const std::string& text) {
  if (text == "pure") return CommitmentMode::kPure;
  if (text == "mixed") return CommitmentMode::kMixed;
  throw DomainError("unknown commitment mode '" + text + "' (expected pure or mixed)");
}

std::size_t follower_best_response(const BimatrixGame& game, const MixedStrategy& leader) {
  const auto follower = col_payoffs(game.follower_payoff, leader);
  const auto leader_vals = col_payoffs(game.leader_payoff, leader);
  const double top = *std::max_element(follower.begin(), follower.end());
  std::size_t best = game.leader_payoff.cols();
  for (std::size_t j = 0; j < follower.size(); ++j) {
    if (follower[j] < top - kEquilibriumTolerance) continue;
    if (best == game.leader_payoff.cols() || leader_vals[j] > leader_vals[best] + kEquilibriumTolerance)
      best = j;
  }
  return best;
}

namespace {

SSEResult evaluate(const BimatrixGame& game, MixedStrategy leader, std::size_t follower) {
  SSEResult r;
  r.follower_action = follower;
  for (std::size_t i = 0; i < leader.weights.size(); ++i) {
    r.leader_value += leader.weights[i] * game.leader_payoff(i, follower);
    r.follower_value += leader.weights[i] * game.follower_payoff(i, follower);
  }
  r.leader = std::move(leader);
  return r;
}

SSEResult solve_pure(const BimatrixGame& game) {
  const std::size_t rows = game.leader_payoff.rows();
  std::optional<SSEResult> best;
  for (std::size_t i = 0; i < rows; ++i) {
    auto mix = MixedStrategy::pure(rows, i);
    const std::size_t j = follower_best_response(game, mix);
    auto cand = evaluate(game, std::move(mix), j);
    if (!best || cand.leader_value > best->leader_value + kEquilibriumTolerance) best = std::move(cand);
  }
  return *best;
}

// One LP per follower action j: maximize the leader's payoff subject to j
// being a follower best response.
SSEResult solve_mixed(const BimatrixGame& game) {
  const Matrix& lead = game.leader_payoff;
  const Matrix& follow = game.follower_payoff;
  const std::size_t rows = lead.rows();
  const std::size_t cols = lead.cols();
  std::optional<SSEResult> best;
  for (std::size_t j = 0; j < cols; ++j) {
    lp::Problem p;
    p.objective.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) p.objective[i] = lead(i, j);
    for (std::size_t k = 0; k < cols; ++k) {
      if (k == j) continue;
      lp::Constraint c{std::vector<double>(rows), lp::Relation::kLessEqual, 0.0};
      for (std::size_t i = 0; i < rows; ++i) c.coeffs[i] = follow(i, k) - follow(i, j);
      p.constraints.push_back(std::move(c));
    }
    p.constraints.push_back({std::vector<double>(rows, 1.0), lp::Relation::kEqual, 1.0});
    auto sol = lp::solve(p);
    if (sol.status == lp::Status::kInfeasible) continue;
    if (sol.status != lp::Status::kOptimal) throw Error("stackelberg LP for follower action is unbounded");
    for (double& w : sol.x) w = std::max(0.0, w);
    const double s = std::accumulate(sol.x.begin(), sol.x.end(), 0.0);
    for (double& w : sol.x) w /= s;
    MixedStrategy mix{sol.x};
    // Report the follower action the leader induces; at the LP optimum this
    // is j or a tie that pays the leader at least as much.
    const std::size_t f = follower_best_response(game, mix);
    auto cand = evaluate(game, std::move(mix), f);
    if (!best || cand.leader_value > best->leader_value + kEquilibriumTolerance) best = std::move(cand);
  }
  if (!best) throw Error("internal error: every follower-action program was infeasible");
  return *best;
}

}  // namespace

SSEResult solve_stackelberg(const BimatrixGame& game, CommitmentMode mode) {
  game.validate();
  return mode == CommitmentMode::kPure ? solve_pure(game) : solve_mixed(game);
}

double leader_pure_security_level(const BimatrixGame& game) {
  game.validate();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < game.leader_payoff.rows(); ++i) {
    auto row = game.leader_payoff.row(i);
    best = std::max(best, *std::min_element(row.begin(), row.end()));
  }
  return best;
}

double leader_mixed_security_level(const BimatrixGame& game) {
  game.validate();
  return solve_zero_sum(MatrixGame{game.leader_payoff, game.row_labels, game.col_labels}).value;
}

}  // namespace ztrust
