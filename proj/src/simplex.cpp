#include "bandapprox/simplex.hpp"

#include <cmath>
#include <vector>

namespace bandapprox {

namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
  Eigen::MatrixXd T;  // rows 0..m-1 constraints, row m reduced costs; last column rhs
  std::vector<int> basis;
  int m, cols;

  double& rhs(int i) { return T(i, cols); }

  void pivot(int r, int j) {
    T.row(r) /= T(r, j);
    for (int i = 0; i <= m; ++i)
      if (i != r && T(i, j) != 0) T.row(i) -= T(i, j) * T.row(r);
    basis[r] = j;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving
  // variable among ratio ties. Returns false when unbounded.
  enum class Step { Optimal, Pivoted, Unbounded };
  Step step(int allowed_cols) {
    const double scale = 1 + T.row(m).head(allowed_cols).cwiseAbs().maxCoeff();
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j)
      if (T(m, j) < -kPivotTol * scale) {
        enter = j;
        break;
      }
    if (enter < 0) return Step::Optimal;
    int leave = -1;
    double best = INFINITY;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) <= kPivotTol) continue;
      const double ratio = rhs(i) / T(i, enter);
      const double tie = 1e-14 * (1 + std::abs(ratio));
      if (leave < 0 || ratio < best - tie ||
          (std::abs(ratio - best) <= tie && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Pivoted;
  }
};

}  // namespace

LpSolution simplex_standard(const Eigen::MatrixXd& A0, const Eigen::VectorXd& b0,
                            const Eigen::VectorXd& c, int max_iter) {
  const int m = int(A0.rows()), n = int(A0.cols());
  Eigen::MatrixXd A = A0;
  Eigen::VectorXd b = b0;
  std::vector<int> flipped(m, 0);
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) {
      A.row(i) *= -1;
      b(i) *= -1;
      flipped[i] = 1;
    }

  Tableau tb{Eigen::MatrixXd::Zero(m + 1, n + m + 1), std::vector<int>(m), m, n + m};
  tb.T.topLeftCorner(m, n) = A;
  tb.T.block(0, n, m, m).setIdentity();
  tb.T.col(n + m).head(m) = b;
  for (int i = 0; i < m; ++i) tb.basis[i] = n + i;
  // Phase 1 costs: sum of artificials, expressed in nonbasic columns.
  tb.T.row(m).head(n) = -A.colwise().sum();
  tb.T(m, n + m) = -b.sum();

  LpSolution out;
  int it = 0;
  for (;; ++it) {
    if (it >= max_iter) {
      out.status = LpStatus::IterationLimit;
      out.iterations = it;
      return out;
    }
    if (tb.step(n) != Tableau::Step::Pivoted) break;
  }
  if (-tb.T(m, n + m) > 1e-9 * (1 + b.lpNorm<Eigen::Infinity>())) {
    out.status = LpStatus::Infeasible;
    out.iterations = it;
    return out;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tb.basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(tb.T(i, j)) > 1e-9) {
        tb.pivot(i, j);
        break;
      }
  }

  // Phase 2 reduced costs.
  tb.T.row(m).setZero();
  tb.T.row(m).head(n) = c.transpose();
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) tb.T.row(m) -= c(tb.basis[i]) * tb.T.row(i);
  for (;; ++it) {
    if (it >= max_iter) {
      out.status = LpStatus::IterationLimit;
      out.iterations = it;
      return out;
    }
    const auto s = tb.step(n);
    if (s == Tableau::Step::Optimal) break;
    if (s == Tableau::Step::Unbounded) {
      out.status = LpStatus::Unbounded;
      out.iterations = it;
      return out;
    }
  }

  out.x = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cB(m);
  for (int i = 0; i < m; ++i) {
    const int j = tb.basis[i];
    if (j < n) {
      out.x(j) = tb.rhs(i);
      B.col(i) = A.col(j);
      cB(i) = c(j);
    } else {
      B.col(i) = Eigen::VectorXd::Unit(m, j - n);
      cB(i) = 0;
    }
  }
  out.duals = B.transpose().fullPivLu().solve(cB);
  for (int i = 0; i < m; ++i)
    if (flipped[i]) out.duals(i) = -out.duals(i);
  out.objective = c.dot(out.x);
  out.iterations = it;
  return out;
}

LpSolution solve_inequality(const Eigen::MatrixXd& G, const Eigen::VectorXd& h,
                            const Eigen::VectorXd& c, int max_iter) {
  // Dual: minimize h'y subject to G'y = -c, y >= 0; the multipliers are w.
  const LpSolution d = simplex_standard(G.transpose(), -c, h, max_iter);
  LpSolution out;
  out.iterations = d.iterations;
  switch (d.status) {
    case LpStatus::Optimal:
      out.status = LpStatus::Optimal;
      out.x = d.duals;
      out.duals = d.x;
      out.objective = c.dot(out.x);
      break;
    case LpStatus::Infeasible: out.status = LpStatus::Unbounded; break;
    case LpStatus::Unbounded: out.status = LpStatus::Infeasible; break;
    case LpStatus::IterationLimit: out.status = LpStatus::IterationLimit; break;
  }
  return out;
}

}  // namespace bandapprox
