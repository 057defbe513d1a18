#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule.
// Problems have the form: maximize c.x subject to rows (<=, =, >=) and x >= 0.

#include <string>
#include <vector>

namespace ztrust::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct Problem {
  std::vector<double> objective;  // maximized
  std::vector<Constraint> constraints;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string to_string(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

Solution solve(const Problem& problem);

}  // namespace ztrust::lp
