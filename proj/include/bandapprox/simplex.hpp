#pragma once

#include <Eigen/Dense>

namespace bandapprox {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Eigen::VectorXd x;      // primal point
  Eigen::VectorXd duals;  // simplex multipliers of the equality rows
  double objective = 0;
  int iterations = 0;
};

// Dense two-phase simplex with Bland's rule for
//   minimize c'x  subject to  A x = b,  x >= 0.
LpSolution simplex_standard(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c, int max_iter = 100000);

// minimize c'w subject to G w <= h with w free, solved through its dual
// (which has one row per variable, so the tableau stays narrow for tall G).
// Status refers to the primal problem.
LpSolution solve_inequality(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                            const Eigen::VectorXd& c, int max_iter = 100000);

}  // namespace bandapprox
