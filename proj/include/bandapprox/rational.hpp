#pragma once

#include <complex>
#include <vector>

namespace bandapprox {

using cplx = std::complex<double>;

// Roots of sum_k c[k] s^k. Trailing (highest-order) coefficients that are
// exactly zero are dropped first.
std::vector<cplx> polynomial_roots(std::vector<double> ascending);

// Drops highest-order coefficients below rel_tol * max|c|.
std::vector<double> trim(std::vector<double> ascending, double rel_tol);

// p(s)/q(s) in the scaled variable s = (x - center) / halfwidth, with
// ascending monomial coefficients. The denominator is normalized so that its
// largest coefficient has magnitude 1.
struct RationalFunction {
  std::vector<double> num{0.0};
  std::vector<double> den{1.0};
  double center = 0.0;
  double halfwidth = 1.0;

  cplx operator()(cplx x) const;
  // Returns +inf at a pole.
  double operator()(double x) const;

  int degree(double rel_tol = 1e-10) const;
  void normalize();

  std::vector<cplx> zeros(double rel_tol = 1e-10) const;
  std::vector<cplx> poles(double rel_tol = 1e-10) const;
  // Zeros of p'q - pq' mapped back to x. Critical points at infinity are not
  // included.
  std::vector<cplx> critical_points(double rel_tol = 1e-10) const;
  // Coefficients of p'q - pq' in s.
  std::vector<double> wronskian() const;
};

}  // namespace bandapprox

namespace bandapprox {

// Linearized least-squares fit p(x) - y q(x) ~ 0 with deg p, deg q <= n.
// The coefficient vector is the smallest right singular vector of the
// row-equilibrated system. Throws NumericalError on rank deficiency.
RationalFunction linearized_fit(const std::vector<double>& xs,
                                const std::vector<double>& ys, int n);

}  // namespace bandapprox
