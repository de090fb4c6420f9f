#include "bandapprox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandapprox/errors.hpp"
#include "bandapprox/simplex.hpp"
#include "bandapprox/verify.hpp"

namespace bandapprox {

void GridProblem::validate() const {
  const std::size_t P = grid.size();
  if (n < 0) throw std::invalid_argument("grid problem: n must be >= 0");
  if (band.size() != P || target.size() != P || (!weights.empty() && weights.size() != P))
    throw std::invalid_argument("grid problem: inconsistent sizes");
  for (std::size_t i = 1; i < P; ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid problem: points must increase");
  for (double w : weights)
    if (!(w > 0)) throw std::invalid_argument("grid problem: weights must be positive");
  const int nb = band.empty() ? 0 : *std::max_element(band.begin(), band.end()) + 1;
  std::vector<int> count(nb, 0);
  for (int b : band) {
    if (b < 0) throw std::invalid_argument("grid problem: negative band index");
    ++count[b];
  }
  for (int c : count)
    if (c < 8 * (n + 1)) throw std::invalid_argument("grid problem: fewer than 8(n+1) points on a band");
}

GridProblem make_grid(const std::vector<Band>& bands, int n, int per_band) {
  if (per_band == 0) per_band = 16 * (n + 1);
  if (per_band < 2) throw std::invalid_argument("make_grid: need at least two points per band");
  struct Pt {
    double x;
    int band, target;
  };
  std::vector<Pt> pts;
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const Interval& iv = bands[b].span;
    for (int j = 0; j < per_band; ++j) {
      const double x = j == 0             ? iv.lo
                       : j == per_band - 1 ? iv.hi
                                           : iv.mid() - 0.5 * iv.length() *
                                                            std::cos(std::numbers::pi * j / (per_band - 1));
      pts.push_back({x, int(b), bands[b].target});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
  GridProblem gp;
  gp.n = n;
  for (const auto& p : pts) {
    gp.grid.push_back(p.x);
    gp.band.push_back(p.band);
    gp.target.push_back(p.target);
  }
  gp.validate();
  return gp;
}

namespace {

// Chebyshev basis values T_0..T_n at s.
void chebyshev(double s, int n, double* out) {
  out[0] = 1;
  if (n >= 1) out[1] = s;
  for (int k = 2; k <= n; ++k) out[k] = 2 * s * out[k - 1] - out[k - 2];
}

// Ascending monomial coefficients of sum c_k T_k.
std::vector<double> to_monomial(const Eigen::VectorXd& c) {
  const int n = int(c.size()) - 1;
  std::vector<std::vector<double>> T(n + 1, std::vector<double>(n + 1, 0.0));
  T[0][0] = 1;
  if (n >= 1) T[1][1] = 1;
  for (int k = 2; k <= n; ++k)
    for (int j = 0; j <= n; ++j) {
      T[k][j] = -T[k - 2][j];
      if (j > 0) T[k][j] += 2 * T[k - 1][j - 1];
    }
  std::vector<double> out(n + 1, 0.0);
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= n; ++j) out[j] += c(k) * T[k][j];
  return out;
}

struct PatternResult {
  Eigen::VectorXd a, b;
  double delta = 1;
  bool converged = false;
  bool feasible = false;
  int iterations = 0;
  std::vector<double> history;
};

PatternResult run_pattern(const GridProblem& gp, const Eigen::MatrixXd& Phi,
                          const std::vector<int>& sign, int max_iter) {
  const int P = int(gp.grid.size()), n = gp.n, K = n + 1;
  const int N = 2 * K + 1;  // a, b, z
  const double eps = 1e-6;
  auto wt = [&](int i) { return gp.weights.empty() ? 1.0 : gp.weights[i]; };

  PatternResult res;
  Eigen::VectorXd qk_abs = Eigen::VectorXd::Ones(P);
  res.delta = 1;  // R = 0
  res.a = Eigen::VectorXd::Zero(K);
  res.b = Eigen::VectorXd::Zero(K);
  res.b(0) = 1;

  Eigen::MatrixXd G(3 * P + 2 * K, N);
  Eigen::VectorXd h(3 * P + 2 * K);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
  c(N - 1) = 1;
  for (int it = 0; it < max_iter; ++it) {
    G.setZero();
    h.setZero();
    for (int i = 0; i < P; ++i) {
      const double f = gp.target[i], s = sign[gp.band[i]];
      const double d = res.delta / wt(i);
      const auto phi = Phi.row(i);
      // f q - p <= d s q + |q_k| z  and  p - f q <= d s q + |q_k| z
      G.block(3 * i, 0, 1, K) = -phi;
      G.block(3 * i, K, 1, K) = (f - d * s) * phi;
      G(3 * i, N - 1) = -qk_abs(i);
      G.block(3 * i + 1, 0, 1, K) = phi;
      G.block(3 * i + 1, K, 1, K) = (-f - d * s) * phi;
      G(3 * i + 1, N - 1) = -qk_abs(i);
      // s q >= eps
      G.block(3 * i + 2, K, 1, K) = -s * phi;
      h(3 * i + 2) = -eps;
    }
    for (int j = 0; j < K; ++j) {
      G(3 * P + 2 * j, K + j) = 1;
      h(3 * P + 2 * j) = 1;
      G(3 * P + 2 * j + 1, K + j) = -1;
      h(3 * P + 2 * j + 1) = 1;
    }
    const LpSolution lp = solve_inequality(G, h, c);
    res.iterations = it + 1;
    if (lp.status != LpStatus::Optimal) {
      if (it == 0) return res;  // no denominator with this sign pattern
      break;
    }
    res.feasible = true;
    const Eigen::VectorXd a = lp.x.head(K), b = lp.x.segment(K, K);
    const Eigen::VectorXd p = Phi * a, q = Phi * b;
    double delta = 0;
#pragma omp parallel for reduction(max : delta)
    for (int i = 0; i < P; ++i) {
      const double e = wt(i) * std::abs(gp.target[i] - p(i) / q(i));
      delta = std::max(delta, std::isfinite(e) ? e : INFINITY);
    }
    if (!(delta < res.delta - 1e-13)) {
      res.converged = true;
      break;
    }
    const double gain = res.delta - delta;
    res.delta = delta;
    res.a = a;
    res.b = b;
    res.history.push_back(delta);
    for (int i = 0; i < P; ++i) qk_abs(i) = std::abs(q(i));
    qk_abs /= qk_abs.maxCoeff();
    if (gain < 1e-12) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace

OracleResult differential_correction(const GridProblem& gp, int max_iter) {
  gp.validate();
  if (gp.n > 6) throw std::domain_error("differential_correction: n must be <= 6");
  const int P = int(gp.grid.size()), K = gp.n + 1;
  const double lo = gp.grid.front(), hi = gp.grid.back();
  const double center = 0.5 * (lo + hi), halfwidth = std::max(0.5 * (hi - lo), 1e-300);
  Eigen::MatrixXd Phi(P, K);
  std::vector<double> row(K);
  for (int i = 0; i < P; ++i) {
    chebyshev((gp.grid[i] - center) / halfwidth, gp.n, row.data());
    for (int k = 0; k < K; ++k) Phi(i, k) = row[k];
  }

  const int nb = *std::max_element(gp.band.begin(), gp.band.end()) + 1;
  OracleResult best;
  bool found = false;
  for (int mask = 0; mask < (1 << (nb - 1)); ++mask) {
    std::vector<int> sign(nb, 1);
    for (int j = 1; j < nb; ++j) sign[j] = (mask >> (j - 1)) & 1 ? -1 : 1;
    const PatternResult pr = run_pattern(gp, Phi, sign, max_iter);
    if (!pr.feasible) continue;
    if (found && !(pr.delta < best.mu_grid)) continue;
    found = true;
    best.mu_grid = pr.delta;
    best.converged = pr.converged;
    best.iterations = pr.iterations;
    best.history = pr.history;
    best.denominator_signs = sign;
    best.r.num = to_monomial(pr.a);
    best.r.den = to_monomial(pr.b);
    best.r.center = center;
    best.r.halfwidth = halfwidth;
    best.r.normalize();
  }
  if (!found) {
    // Only the zero function is available.
    best.mu_grid = 1;
    best.converged = true;
    best.r = RationalFunction{};
  }
  return best;
}

OracleComparison validate_against(const FilterSolution& sol, const BandSystem& bands, int n,
                                  double grid_tol, int per_band) {
  if (n > 4) throw std::domain_error("validate_against: oracle runs need n <= 4");
  const VerificationReport rep = verify_solution(sol, bands);
  const OracleResult orc = differential_correction(make_grid(bands.bands(), n, per_band));
  OracleComparison out;
  out.mu_constructed = rep.mu;
  out.mu_grid = orc.mu_grid;
  out.alternation_count = rep.alternation_count;
  out.local_opt = rep.alternation_count == 2 * n + 2;
  out.global_bound = orc.mu_grid <= rep.mu + grid_tol;
  out.oracle_converged = orc.converged;
  return out;
}

}  // namespace bandapprox
