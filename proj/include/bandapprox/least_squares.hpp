#pragma once

#include <Eigen/Dense>
#include <functional>

namespace bandapprox {

// Residual map. Configurations outside the admissible set should return a
// vector containing NaN rather than throw.
using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LmOptions {
  int max_iter = 200;
  double tol = 1e-12;       // stop when max |r| < tol
  double fd_step = 1e-7;    // relative forward-difference step
};

struct LmResult {
  Eigen::VectorXd x;
  double residual = 0;  // max |r|
  bool converged = false;
  int iterations = 0;
};

// Levenberg-Marquardt with a forward-difference Jacobian.
LmResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x0,
                             const LmOptions& opt = {});

struct HomotopyOptions {
  double first_step = 0.1;
  double max_step = 0.25;
  double min_step = 1e-4;
  double step_tol = 1e-9;  // residual required to accept a homotopy step
  LmOptions lm{200, 1e-11, 1e-7};
};

// Solves raw(x) = target by tracking raw(x) = r0 + s (target - r0) from
// s = 0 (where x0 is exact) to s = 1. Returns the last accepted point;
// converged is false if the step size fell below min_step.
LmResult target_homotopy(const ResidualFn& raw, Eigen::VectorXd x0,
                         const Eigen::VectorXd& target,
                         const HomotopyOptions& opt = {});

}  // namespace bandapprox
