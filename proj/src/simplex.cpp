#include "ztrust/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ztrust/matrix.hpp"

namespace ztrust::lp {

namespace {

constexpr double kEps = 1e-11;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, cols + 1), basis_(rows, 0) {}

  std::size_t rows() const { return t_.rows(); }
  std::size_t cols() const { return t_.cols() - 1; }
  double& at(std::size_t r, std::size_t c) { return t_(r, c); }
  double at(std::size_t r, std::size_t c) const { return t_(r, c); }
  double& rhs(std::size_t r) { return t_(r, cols()); }
  double rhs(std::size_t r) const { return t_(r, cols()); }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t width = t_.cols();
    const double p = t_(pr, pc);
    for (std::size_t c = 0; c < width; ++c) t_(pr, c) /= p;
    t_(pr, pc) = 1.0;
    for (std::size_t r = 0; r < t_.rows(); ++r) {
      if (r == pr) continue;
      const double f = t_(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) t_(r, c) -= f * t_(pr, c);
      t_(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

 private:
  Matrix t_;
  std::vector<std::size_t> basis_;
};

// Runs simplex iterations maximizing `cost` over columns not in `barred`.
// Returns false if the problem is unbounded.
bool optimize(Tableau& tab, const std::vector<double>& cost, const std::vector<bool>& barred,
              int& pivots) {
  const std::size_t m = tab.rows();
  const std::size_t n = tab.cols();
  std::vector<double> reduced(n);
  constexpr int kMaxPivots = 1'000'000;
  while (pivots < kMaxPivots) {
    // Reduced costs c_j - c_B B^-1 A_j from the current tableau.
    for (std::size_t j = 0; j < n; ++j) {
      double z = 0.0;
      for (std::size_t r = 0; r < m; ++r) z += cost[tab.basis()[r]] * tab.at(r, j);
      reduced[j] = cost[j] - z;
    }
    // Bland: lowest-index improving column.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!barred[j] && reduced[j] > kEps) {
        enter = j;
        break;
      }
    }
    if (enter == n) return true;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = tab.at(r, enter);
      if (a <= kEps) continue;
      const double ratio = tab.rhs(r) / a;
      if (ratio < best - kEps ||
          (std::abs(ratio - best) <= kEps && leave != m && tab.basis()[r] < tab.basis()[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == m) return false;
    tab.pivot(leave, enter);
    ++pivots;
  }
  throw std::runtime_error("simplex pivot limit reached");
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "unknown";
}

Solution solve(const Problem& problem) {
  const std::size_t n = problem.objective.size();
  const std::size_t m = problem.constraints.size();

  // Normalize to non-negative right-hand sides.
  std::vector<Constraint> rows = problem.constraints;
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (auto& c : rows) {
    if (c.coeffs.size() != n) throw std::invalid_argument("constraint width mismatch");
    if (c.rhs < 0.0) {
      for (double& v : c.coeffs) v = -v;
      c.rhs = -c.rhs;
      if (c.relation == Relation::kLessEqual) c.relation = Relation::kGreaterEqual;
      else if (c.relation == Relation::kGreaterEqual) c.relation = Relation::kLessEqual;
    }
    if (c.relation != Relation::kEqual) ++n_slack;
    if (c.relation != Relation::kLessEqual) ++n_art;
  }

  const std::size_t total = n + n_slack + n_art;
  const std::size_t art_begin = n + n_slack;
  Tableau tab(m, total);
  std::size_t slack = n;
  std::size_t art = art_begin;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = rows[r];
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = c.coeffs[j];
    tab.rhs(r) = c.rhs;
    switch (c.relation) {
      case Relation::kLessEqual:
        tab.at(r, slack) = 1.0;
        tab.basis()[r] = slack++;
        break;
      case Relation::kGreaterEqual:
        tab.at(r, slack++) = -1.0;
        tab.at(r, art) = 1.0;
        tab.basis()[r] = art++;
        break;
      case Relation::kEqual:
        tab.at(r, art) = 1.0;
        tab.basis()[r] = art++;
        break;
    }
  }

  Solution sol;
  std::vector<bool> barred(total, false);

  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = art_begin; j < total; ++j) phase1[j] = -1.0;
    optimize(tab, phase1, barred, sol.pivots);
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m; ++r)
      if (tab.basis()[r] >= art_begin) infeasibility += tab.rhs(r);
    if (infeasibility > 1e-9) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis()[r] < art_begin) continue;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(tab.at(r, j)) > 1e-9) {
          tab.pivot(r, j);
          ++sol.pivots;
          break;
        }
      }
    }
    for (std::size_t j = art_begin; j < total; ++j) barred[j] = true;
  }

  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = problem.objective[j];
  if (!optimize(tab, cost, barred, sol.pivots)) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  sol.status = Status::kOptimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (tab.basis()[r] < n) sol.x[tab.basis()[r]] = std::max(0.0, tab.rhs(r));
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace ztrust::lp
