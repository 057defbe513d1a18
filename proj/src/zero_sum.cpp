#include "ztrust/zero_sum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ztrust/error.hpp"
#include "ztrust/simplex.hpp"

namespace ztrust {

namespace {

std::vector<std::string> default_labels(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

// Clears round-off negatives and renormalizes.
MixedStrategy clean(std::vector<double> w) {
  for (double& v : w)
    if (v < 0.0) v = 0.0;
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= s;
  return MixedStrategy{std::move(w)};
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Solves sum_{i in I} w_i * m(i, j) = v for j in J, sum w = 1.
// Returns (w over all rows of m, v) or nothing when singular.
std::optional<std::pair<std::vector<double>, double>> indifference(
    const Matrix& m, const std::vector<std::size_t>& support, const std::vector<std::size_t>& against) {
  const std::size_t k = support.size();
  Matrix sys(k + 1, k + 1);
  std::vector<double> rhs(k + 1, 0.0);
  for (std::size_t e = 0; e < k; ++e) {
    for (std::size_t u = 0; u < k; ++u) sys(e, u) = m(support[u], against[e]);
    sys(e, k) = -1.0;
  }
  for (std::size_t u = 0; u < k; ++u) sys(k, u) = 1.0;
  rhs[k] = 1.0;
  auto sol = solve_linear_system(std::move(sys), std::move(rhs));
  if (sol.empty()) return std::nullopt;
  std::vector<double> w(m.rows(), 0.0);
  for (std::size_t u = 0; u < k; ++u) w[support[u]] = sol[u];
  return std::make_pair(std::move(w), sol[k]);
}

}  // namespace

void MatrixGame::validate() const {
  if (payoff.rows() == 0 || payoff.cols() == 0) throw DomainError("matrix game needs at least one row and column");
  if (!payoff.all_finite()) throw DomainError("matrix game has non-finite payoffs");
  if (row_labels.size() != payoff.rows() || col_labels.size() != payoff.cols())
    throw DomainError("matrix game labels do not match payoff dimensions");
}

MatrixGame MatrixGame::from(Matrix payoff) {
  MatrixGame g{std::move(payoff), {}, {}};
  g.row_labels = default_labels("r", g.payoff.rows());
  g.col_labels = default_labels("c", g.payoff.cols());
  return g;
}

void MixedStrategy::validate() const {
  if (weights.empty()) throw DomainError("empty mixed strategy");
  double s = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw DomainError("mixed strategy has a negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9) throw DomainError("mixed strategy does not sum to 1");
}

MixedStrategy MixedStrategy::pure(std::size_t n, std::size_t index) {
  std::vector<double> w(n, 0.0);
  w.at(index) = 1.0;
  return {std::move(w)};
}

MixedStrategy MixedStrategy::uniform(std::size_t n) {
  return {std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

std::vector<std::size_t> MixedStrategy::support(double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > tol) out.push_back(i);
  return out;
}

std::vector<double> row_payoffs(const Matrix& a, const MixedStrategy& col) {
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * col.weights[j];
  return out;
}

std::vector<double> col_payoffs(const Matrix& a, const MixedStrategy& row) {
  std::vector<double> out(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += row.weights[i] * a(i, j);
  return out;
}

double minimax_certificate_gap(const Matrix& a, const ZeroSumSolution& sol) {
  auto cp = col_payoffs(a, sol.row);
  auto rp = row_payoffs(a, sol.col);
  const double guaranteed = *std::min_element(cp.begin(), cp.end());
  const double conceded = *std::max_element(rp.begin(), rp.end());
  return std::max({0.0, sol.value - guaranteed, conceded - sol.value});
}

ZeroSumSolution solve_zero_sum(const MatrixGame& game) {
  game.validate();
  const Matrix& a = game.payoff;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  // Shift so every entry is >= 1; the value variable is then positive.
  const double shift = 1.0 - *std::min_element(a.data().begin(), a.data().end());

  lp::Problem row_lp;
  row_lp.objective.assign(rows + 1, 0.0);
  row_lp.objective[rows] = 1.0;
  for (std::size_t j = 0; j < cols; ++j) {
    lp::Constraint c{std::vector<double>(rows + 1, 0.0), lp::Relation::kLessEqual, 0.0};
    for (std::size_t i = 0; i < rows; ++i) c.coeffs[i] = -(a(i, j) + shift);
    c.coeffs[rows] = 1.0;
    row_lp.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint simplex_sum{std::vector<double>(rows + 1, 1.0), lp::Relation::kEqual, 1.0};
    simplex_sum.coeffs[rows] = 0.0;
    row_lp.constraints.push_back(std::move(simplex_sum));
  }

  lp::Problem col_lp;
  col_lp.objective.assign(cols + 1, 0.0);
  col_lp.objective[cols] = -1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    lp::Constraint c{std::vector<double>(cols + 1, 0.0), lp::Relation::kLessEqual, 0.0};
    for (std::size_t j = 0; j < cols; ++j) c.coeffs[j] = a(i, j) + shift;
    c.coeffs[cols] = -1.0;
    col_lp.constraints.push_back(std::move(c));
  }
  {
    lp::Constraint simplex_sum{std::vector<double>(cols + 1, 1.0), lp::Relation::kEqual, 1.0};
    simplex_sum.coeffs[cols] = 0.0;
    col_lp.constraints.push_back(std::move(simplex_sum));
  }

  auto row_sol = lp::solve(row_lp);
  auto col_sol = lp::solve(col_lp);
  if (row_sol.status != lp::Status::kOptimal || col_sol.status != lp::Status::kOptimal)
    throw Error("zero-sum LP did not reach an optimum (" + lp::to_string(row_sol.status) + ", " +
                lp::to_string(col_sol.status) + ")");

  ZeroSumSolution out;
  out.row = clean({row_sol.x.begin(), row_sol.x.begin() + static_cast<long>(rows)});
  out.col = clean({col_sol.x.begin(), col_sol.x.begin() + static_cast<long>(cols)});
  auto cp = col_payoffs(a, out.row);
  auto rp = row_payoffs(a, out.col);
  const double lower = *std::min_element(cp.begin(), cp.end());
  const double upper = *std::max_element(rp.begin(), rp.end());
  out.value = 0.5 * (lower + upper);
  return out;
}

ZeroSumSolution solve_zero_sum_support_enumeration(const MatrixGame& game) {
  game.validate();
  const Matrix& a = game.payoff;
  const Matrix at = a.transposed();
  constexpr double kTol = 1e-9;
  std::optional<ZeroSumSolution> found;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()) && !found; ++k) {
    for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        auto x = indifference(a, rows, cols);
        auto y = indifference(at, cols, rows);
        if (!x || !y) return false;
        if (std::abs(x->second - y->second) > 1e-7) return false;
        for (double w : x->first)
          if (w < -kTol) return false;
        for (double w : y->first)
          if (w < -kTol) return false;
        ZeroSumSolution cand{x->second, clean(x->first), clean(y->first)};
        if (minimax_certificate_gap(a, cand) > 1e-7) return false;
        found = cand;
        return true;
      });
      return found.has_value();
    });
  }
  if (!found) throw Error("support enumeration found no equilibrium");
  return *found;
}

FictitiousPlayResult fictitious_play(const MatrixGame& game, const FictitiousPlayOptions& options) {
  game.validate();
  if (options.max_iters < 1) throw DomainError("fictitious play needs max_iters >= 1");
  if (!(options.tolerance > 0.0)) throw DomainError("fictitious play needs tolerance > 0");
  const Matrix& a = game.payoff;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  const std::size_t stride = std::max<std::size_t>(1, options.trace_stride);

  std::vector<double> row_counts(rows, 0.0), col_counts(cols, 0.0);
  // Cumulative payoffs: row_total[i] = sum_t A(i, c_t), col_total[j] = sum_t A(r_t, j).
  std::vector<double> row_total(rows, 0.0), col_total(cols, 0.0);
  std::size_t r = 0, c = 0;

  FictitiousPlayResult result;
  result.best_lower = -std::numeric_limits<double>::infinity();
  result.best_upper = std::numeric_limits<double>::infinity();

  auto snapshot = [&](std::size_t it, double lower, double upper) {
    FictitiousPlayStep s;
    s.iteration = it;
    s.row.weights.resize(rows);
    s.col.weights.resize(cols);
    const double n = static_cast<double>(it);
    for (std::size_t i = 0; i < rows; ++i) s.row.weights[i] = row_counts[i] / n;
    for (std::size_t j = 0; j < cols; ++j) s.col.weights[j] = col_counts[j] / n;
    s.lower = lower;
    s.upper = upper;
    return s;
  };

  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    row_counts[r] += 1.0;
    col_counts[c] += 1.0;
    for (std::size_t i = 0; i < rows; ++i) row_total[i] += a(i, c);
    for (std::size_t j = 0; j < cols; ++j) col_total[j] += a(r, j);

    const double n = static_cast<double>(it);
    const double lower = *std::min_element(col_total.begin(), col_total.end()) / n;
    const double upper = *std::max_element(row_total.begin(), row_total.end()) / n;
    result.best_lower = std::max(result.best_lower, lower);
    result.best_upper = std::min(result.best_upper, upper);

    const bool done = upper - lower < options.tolerance;
    if (done || it == options.max_iters || (it - 1) % stride == 0) {
      result.trace.push_back(snapshot(it, lower, upper));
    }
    if (done) {
      result.converged = true;
      break;
    }
    r = static_cast<std::size_t>(std::max_element(row_total.begin(), row_total.end()) - row_total.begin());
    c = static_cast<std::size_t>(std::min_element(col_total.begin(), col_total.end()) - col_total.begin());
  }
  result.final = result.trace.back();
  return result;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kCycleDetected: return "cycle_detected";
    case Termination::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

std::size_t row_best_response(const Matrix& a, std::size_t col) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.rows(); ++i)
    if (a(i, col) > a(best, col)) best = i;
  return best;
}

std::size_t col_best_response(const Matrix& a, std::size_t row) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < a.cols(); ++j)
    if (a(row, j) < a(row, best)) best = j;
  return best;
}

BestResponseTrace alternate_best_response(const MatrixGame& game, PureProfile start,
                                          std::size_t max_iters) {
  game.validate();
  const Matrix& a = game.payoff;
  if (start.first >= a.rows() || start.second >= a.cols())
    throw DomainError("alternating best response start profile out of range");

  auto is_saddle = [&](const PureProfile& p) {
    const double v = a(p.first, p.second);
    return v >= a(row_best_response(a, p.second), p.second) - kEquilibriumTolerance &&
           v <= a(p.first, col_best_response(a, p.first)) + kEquilibriumTolerance;
  };

  BestResponseTrace out;
  out.profiles.push_back(start);
  PureProfile current = start;
  bool row_moves = true;
  // (profile, mover) -> position in `profiles` when that state was entered.
  std::map<std::pair<PureProfile, bool>, std::size_t> seen;

  for (std::size_t it = 0;; ++it) {
    if (is_saddle(current)) {
      out.termination = Termination::kConverged;
      return out;
    }
    auto key = std::make_pair(current, row_moves);
    if (auto hit = seen.find(key); hit != seen.end()) {
      out.cycle.assign(out.profiles.begin() + static_cast<long>(hit->second), out.profiles.end());
      out.termination = Termination::kCycleDetected;
      return out;
    }
    if (it >= max_iters) {
      out.termination = Termination::kBudgetExhausted;
      return out;
    }
    seen.emplace(key, out.profiles.size() - 1);
    PureProfile next = current;
    if (row_moves) next.first = row_best_response(a, current.second);
    else next.second = col_best_response(a, current.first);
    row_moves = !row_moves;
    if (next != current) {
      out.profiles.push_back(next);
      current = next;
    }
  }
}

}  // namespace ztrust
