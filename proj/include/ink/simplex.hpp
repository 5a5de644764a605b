#pragma once

#include <cstddef>
#include <vector>

namespace ink::lp {

enum class Relation { LessEq, Eq, GreaterEq };

struct Constraint {
  std::vector<double> coeffs;  // one per variable
  Relation rel;
  double rhs;
};

/// maximize objective . x  subject to rows, x >= 0
struct Problem {
  std::size_t nvars = 0;
  std::vector<double> objective;
  std::vector<Constraint> rows;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

/// Dense two-phase simplex with Bland's rule (anti-cycling). pivot_tol is
/// the threshold below which coefficients count as zero.
Solution maximize(const Problem& p, double pivot_tol = 1e-9);

}  // namespace ink::lp
