#include "bandapprox/least_squares.hpp"

#include <cmath>
#include <limits>

namespace bandapprox {

namespace {

double max_abs(const Eigen::VectorXd& r) {
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

double cost(const Eigen::VectorXd& r) {
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  return r.squaredNorm();
}

}  // namespace

LmResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x,
                             const LmOptions& opt) {
  LmResult out;
  Eigen::VectorXd r = f(x);
  double c = cost(r);
  double lambda = 1e-3;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (!(max_abs(r) >= opt.tol)) break;
    const int n = int(x.size());
    Eigen::MatrixXd J(r.size(), n);
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      const double h = opt.fd_step * std::max(1.0, std::abs(x(j)));
      Eigen::VectorXd xp = x;
      xp(j) += h;
      Eigen::VectorXd rp = f(xp);
      if (!rp.allFinite()) {
        xp(j) = x(j) - h;
        rp = f(xp);
        if (!rp.allFinite()) {
          ok = false;
          break;
        }
        J.col(j) = (r - rp) / h;
      } else {
        J.col(j) = (rp - r) / h;
      }
    }
    if (!ok) break;
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool stepped = false;
    while (lambda < 1e16) {
      Eigen::MatrixXd M = A;
      for (int j = 0; j < n; ++j) M(j, j) += lambda * (A(j, j) + 1e-12);
      const Eigen::VectorXd dx = M.ldlt().solve(-g);
      const Eigen::VectorXd xn = x + dx;
      const Eigen::VectorXd rn = f(xn);
      const double cn = cost(rn);
      if (cn < c) {
        x = xn;
        r = rn;
        c = cn;
        lambda = std::max(lambda / 5, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4;
    }
    if (!stepped) break;
  }
  out.x = x;
  out.residual = max_abs(r);
  out.converged = out.residual < opt.tol;
  out.iterations = it;
  return out;
}

LmResult target_homotopy(const ResidualFn& raw, Eigen::VectorXd x,
                         const Eigen::VectorXd& target,
                         const HomotopyOptions& opt) {
  const Eigen::VectorXd r0 = raw(x);
  LmResult out;
  out.x = x;
  if (!r0.allFinite()) {
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  double s = 0, ds = opt.first_step;
  while (s < 1) {
    const double s1 = std::min(1.0, s + ds);
    const Eigen::VectorXd tg = r0 + s1 * (target - r0);
    auto shifted = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
      return raw(p) - tg;
    };
    LmResult step = levenberg_marquardt(shifted, x, opt.lm);
    if (step.residual < opt.step_tol) {
      x = step.x;
      s = s1;
      ds = std::min(ds * 1.5, opt.max_step);
    } else {
      ds /= 2;
      if (ds < opt.min_step) break;
    }
  }
  out.x = x;
  out.residual = max_abs(raw(x) - target);
  out.converged = s >= 1 && out.residual < opt.step_tol;
  out.iterations = 0;
  return out;
}

}  // namespace bandapprox
