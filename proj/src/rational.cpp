#include "bandapprox/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/Polynomials>

#include "bandapprox/elliptic.hpp"

namespace bandapprox {

std::vector<double> trim(std::vector<double> c, double rel_tol) {
  double big = 0;
  for (double v : c) big = std::max(big, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= rel_tol * big) c.pop_back();
  return c;
}

std::vector<cplx> polynomial_roots(std::vector<double> c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  Eigen::VectorXd coeffs = Eigen::Map<Eigen::VectorXd>(c.data(), c.size());
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  std::vector<cplx> out;
  for (const auto& r : solver.roots()) out.push_back(r);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

namespace {

template <class T>
T horner(const std::vector<double>& c, T s) {
  T acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

std::vector<double> multiply(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<cplx> to_x(std::vector<cplx> s, double c, double h) {
  for (auto& v : s) v = c + h * v;
  return s;
}

}  // namespace

cplx RationalFunction::operator()(cplx x) const {
  const cplx s = (x - center) / halfwidth;
  const cplx q = horner(den, s);
  if (q == 0.0) return infinity_marker();
  const cplx r = horner(num, s) / q;
  return is_infinite(r) ? infinity_marker() : r;
}

double RationalFunction::operator()(double x) const {
  const double s = (x - center) / halfwidth;
  const double q = horner(den, s);
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  return horner(num, s) / q;
}

int RationalFunction::degree(double rel_tol) const {
  double big = 0;
  for (double v : num) big = std::max(big, std::abs(v));
  for (double v : den) big = std::max(big, std::abs(v));
  auto deg = [&](const std::vector<double>& c) {
    int d = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (std::abs(c[k]) > rel_tol * big) d = int(k);
    return d;
  };
  return std::max(deg(num), deg(den));
}

void RationalFunction::normalize() {
  double big = 0;
  for (double v : den) big = std::max(big, std::abs(v));
  if (big == 0) return;
  for (double& v : num) v /= big;
  for (double& v : den) v /= big;
}

std::vector<cplx> RationalFunction::zeros(double rel_tol) const {
  return to_x(polynomial_roots(trim(num, rel_tol)), center, halfwidth);
}

std::vector<cplx> RationalFunction::poles(double rel_tol) const {
  return to_x(polynomial_roots(trim(den, rel_tol)), center, halfwidth);
}

std::vector<double> RationalFunction::wronskian() const {
  auto a = multiply(derivative(num), den);
  auto b = multiply(num, derivative(den));
  a.resize(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  return a;
}

std::vector<cplx> RationalFunction::critical_points(double rel_tol) const {
  return to_x(polynomial_roots(trim(wronskian(), rel_tol)), center, halfwidth);
}

}  // namespace bandapprox

#include "bandapprox/errors.hpp"

namespace bandapprox {

RationalFunction linearized_fit(const std::vector<double>& xs,
                                const std::vector<double>& ys, int n) {
  if (xs.size() != ys.size() || xs.size() < std::size_t(2 * n + 1))
    throw std::invalid_argument("linearized_fit: need at least 2n+1 samples");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  RationalFunction r;
  r.center = 0.5 * (*lo + *hi);
  r.halfwidth = std::max(0.5 * (*hi - *lo), 1e-300);
  const int cols = 2 * (n + 1);
  Eigen::MatrixXd A(xs.size(), cols);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = (xs[i] - r.center) / r.halfwidth;
    double pw = 1;
    for (int k = 0; k <= n; ++k, pw *= s) {
      A(i, k) = pw;
      A(i, n + 1 + k) = -ys[i] * pw;
    }
    A.row(i) /= std::max(1.0, std::abs(ys[i]));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int last = std::min<int>(cols, A.rows()) - 1;
  if (sv(0) == 0 || (last > 0 && sv(last - 1) < 1e-14 * sv(0) &&
                     A.rows() >= cols))
    throw NumericalError("linearized_fit: rank deficient system",
                         last > 0 ? sv(last - 1) / sv(0) : 0.0);
  Eigen::VectorXd v = svd.matrixV().col(cols - 1);
  r.num.assign(v.data(), v.data() + n + 1);
  r.den.assign(v.data() + n + 1, v.data() + cols);
  r.normalize();
  return r;
}

}  // namespace bandapprox
