#include "bandapprox/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandapprox/errors.hpp"
#include "bandapprox/quadrature.hpp"

namespace bandapprox {

namespace {

constexpr double kPi = std::numbers::pi;

// Sum of terms c_n * f(n) where log|c_n f(n)| <= lq*e(n)^2 + pi*e(n)*|Im 2v|.
// Stops once the bound is past its peak and below the relative tail level.
template <class Term>
cplx theta_sum(double lq, double ay, double shift, Term term) {
  cplx sum = 0;
  for (int n = 0; n < 10000; ++n) {
    const double e = n + shift;
    if (e == 0) {
      sum += term(n);
      continue;
    }
    const double log_bound = lq * e * e + 2 * kPi * e * ay;
    sum += term(n);
    const bool decreasing = 2 * e * lq + 2 * kPi * ay < 0;
    if (decreasing && std::exp(log_bound) < 1e-16 * (std::abs(sum) + 1)) break;
  }
  return sum;
}

}  // namespace

cplx theta(int j, cplx v, double q) {
  if (!(q > 0 && q < 1)) throw std::domain_error("theta: nome must lie in (0,1)");
  const double lq = std::log(q);
  const double ay = std::abs(v.imag());
  const cplx piv = kPi * v;
  switch (j) {
    case 1:
      return 2.0 * theta_sum(lq, ay, 0.5, [&](int n) {
               const double e = n + 0.5;
               return (n % 2 ? -1.0 : 1.0) * std::exp(lq * e * e) *
                      std::sin(double(2 * n + 1) * piv);
             });
    case 2:
      return 2.0 * theta_sum(lq, ay, 0.5, [&](int n) {
               const double e = n + 0.5;
               return std::exp(lq * e * e) * std::cos(double(2 * n + 1) * piv);
             });
    case 3:
    case 0: {
      const double sign = j == 0 ? -1.0 : 1.0;
      cplx s = theta_sum(lq, ay, 0.0, [&](int n) -> cplx {
        if (n == 0) return 0.0;
        return (n % 2 ? sign : 1.0) * std::exp(lq * n * n) *
               std::cos(double(2 * n) * piv);
      });
      return 1.0 + 2.0 * s;
    }
    default:
      throw std::domain_error("theta: index must be 0, 1, 2 or 3");
  }
}

EllipticModulus modulus_from_t(double t) {
  if (!(t > 0) || !std::isfinite(t))
    throw std::domain_error("modulus_from_t: t must be positive");
  const double q = std::exp(-kPi * t);
  if (q > 0.9) throw std::domain_error("modulus_from_t: t too small (nome > 0.9)");
  EllipticModulus m;
  m.t = t;
  m.q = q;
  const double th3 = theta(3, 0.0, q).real();
  const double th2 = theta(2, 0.0, q).real();
  const double th0 = theta(0, 0.0, q).real();
  m.K = 0.5 * kPi * th3 * th3;
  m.kinv = (th3 / th2) * (th3 / th2);
  m.kprime = (th0 / th3) * (th0 / th3);
  return m;
}

cplx x_map(cplx u, const EllipticModulus& mod) {
  if (is_infinite(u)) return infinity_marker();
  const double t = mod.t;
  double a = u.real(), b = u.imag();
  // Bring u into |Re u| <= 1, |Im u| <= t/2 using x(u+2) = -x(u),
  // x(u+2tau) = x(u) and x(u+tau) = 1/(k x(u)). Evaluating the theta quotient
  // only there keeps it away from its zeros and poles.
  b -= 2 * t * std::round(b / (2 * t));
  a -= 2 * std::round(a / 2);
  const bool flip = std::lround(std::round(u.real() / 2)) % 2 != 0;
  const bool invert = std::abs(b) > 0.5 * t;
  if (invert) b -= b > 0 ? t : -t;
  const cplx v = 0.5 * cplx(a, b);
  const double th3 = theta(3, 0.0, mod.q).real();
  const double th2 = theta(2, 0.0, mod.q).real();
  cplx val = (th3 / th2) * theta(1, v, mod.q) / theta(0, v, mod.q);
  if (invert) {
    if (std::abs(val) == 0) return infinity_marker();
    val = mod.kinv / val;
  }
  if (is_infinite(val)) return infinity_marker();
  return flip ? -val : val;
}

namespace {

// Square root of (1 - s^2)(1 - k^2 s^2), analytic in the upper half plane and
// positive on (-1,1).
cplx root_product(cplx s, double k) {
  return std::sqrt(1.0 - s) * std::sqrt(1.0 + s) * std::sqrt(1.0 - k * s) *
         std::sqrt(1.0 + k * s);
}

// Real branch for x >= 0 via incomplete integrals of the first kind.
cplx inverse_real_nonneg(double x, const EllipticModulus& mod) {
  const double k = mod.k();
  const double K = mod.K;
  // Amplitudes come from atan2 with a factored cosine; asin loses half the
  // digits next to the corners.
  if (x <= 1) return {std::ellint_1(k, std::atan2(x, std::sqrt((1 - x) * (1 + x)))) / K, 0.0};
  if (x <= mod.kinv) {
    // sn(K + iy) = 1/dn(y | k')
    const double r = 1 / x;
    const double s = std::sqrt((1 - r) * (1 + r));
    const double c = std::sqrt(std::max(0.0, (r - k) * (r + k)));
    return {1.0, std::ellint_1(mod.kprime, std::atan2(s, c)) / K};
  }
  // sn(Ks + iK') = 1/(k sn(Ks))
  const double kx = k * x;
  return {std::ellint_1(k, std::atan2(1.0, std::sqrt(std::max(0.0, (kx - 1) * (kx + 1))))) / K, mod.t};
}

cplx clamp_to_rectangle(cplx u, double t) {
  return {std::clamp(u.real(), -1.0, 1.0), std::clamp(u.imag(), 0.0, t)};
}

}  // namespace

cplx inverse_x(cplx x, const EllipticModulus& mod) {
  if (is_infinite(x)) return mod.tau();
  if (x.imag() < 0) throw std::domain_error("inverse_x: Im x must be >= 0");
  const double tol = 1e-12 * (1 + std::abs(x));
  const double k = mod.k();

  cplx u;
  if (x.imag() == 0) {
    const double r = x.real();
    u = inverse_real_nonneg(std::abs(r), mod);
    if (r < 0) u = -std::conj(u);
  } else {
    auto f = [&](double lam) { return x / root_product(lam * x, k); };
    u = integrate(f, 0.0, 1.0, 1e-13) / mod.K;
  }

  // Newton polish, each step kept only if the residual shrinks.
  double res = std::abs(x_map(u, mod) - x);
  for (int it = 0; it < 30 && !(res <= 0.01 * tol); ++it) {
    const cplx xu = x_map(u, mod);
    if (is_infinite(xu)) break;
    const cplx d = mod.K * root_product(xu, k);
    if (std::abs(d) == 0) break;
    const cplx cand = clamp_to_rectangle(u - (xu - x) / d, mod.t);
    const double r2 = std::abs(x_map(cand, mod) - x);
    if (!(r2 < res)) break;
    u = cand;
    res = r2;
  }
  u = clamp_to_rectangle(u, mod.t);
  res = std::abs(x_map(u, mod) - x);
  if (!(res <= tol))
    throw NumericalError("inverse_x: Newton polish did not converge", res);
  return u;
}

}  // namespace bandapprox
