#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace bandapprox {

using cplx = std::complex<double>;

// Purely imaginary modulus tau = i*t of the rectangle Pi(tau) = (-1,1) x (0,t).
struct EllipticModulus {
  double t = 0;      // |tau|
  double q = 0;      // nome exp(-pi t)
  double K = 0;      // complete elliptic integral, (pi/2) theta3^2
  double kinv = 0;   // 1/k = (theta3/theta2)^2 = x(1 + tau | tau)
  double kprime = 0; // complementary modulus (theta0/theta3)^2

  double k() const { return 1.0 / kinv; }
  cplx tau() const { return {0.0, t}; }
  bool operator==(const EllipticModulus&) const = default;
};

// Smallest t accepted by modulus_from_t (nome 0.9). Below it the theta series
// converge too slowly to be useful.
inline constexpr double kMinModulusT = 0.033537311862436;

// Point-at-infinity marker returned by maps evaluated at a pole.
inline cplx infinity_marker() {
  return {std::numeric_limits<double>::infinity(), 0.0};
}
inline bool is_infinite(cplx z) {
  return !std::isfinite(z.real()) || !std::isfinite(z.imag());
}

// Jacobi theta functions with argument scaled by pi, so that theta_j has
// period 1 or 2 in v:
//   theta1(v) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) pi v)
//   theta2(v) = 2 sum q^{(n+1/2)^2} cos((2n+1) pi v)
//   theta3(v) = 1 + 2 sum q^{n^2} cos(2 n pi v)
//   theta0(v) = 1 + 2 sum (-1)^n q^{n^2} cos(2 n pi v)   (often called theta4)
// With this labeling x(u|tau) = (theta3/theta2) theta1(u/2)/theta0(u/2).
cplx theta(int j, cplx v, double q);

EllipticModulus modulus_from_t(double t);

// Developing map of the rectangle: x(u|tau) = sn(K u | k). Maps Pi(tau) onto
// the upper half plane with -1, 0, 1 fixed and 1 + tau -> 1/k.
cplx x_map(cplx u, const EllipticModulus& mod);

// Inverse of x_map on the closed upper half plane. The result lies in the
// closed rectangle [-1,1] x [0,t]. Throws NumericalError if the Newton polish
// does not reach 1e-12 (1 + |x|).
cplx inverse_x(cplx x, const EllipticModulus& mod);

}  // namespace bandapprox
