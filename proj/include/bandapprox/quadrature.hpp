#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace bandapprox {

// 64-point Gauss-Legendre rule on [-1,1], stored as the 32 nonnegative nodes
// and their weights (the rule is symmetric).
const std::vector<double>& gl_nodes();
const std::vector<double>& gl_weights();

template <class R>
struct Panel {
  R value;
  double l1;  // integral of |f|, used as the round-off scale
};

template <class F>
auto gauss_panel(F&& f, double a, double b) {
  const auto& xs = gl_nodes();
  const auto& ws = gl_weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  using R = decltype(f(c));
  R sum{};
  double l1 = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      const R v = f(c);
      sum += ws[i] * v;
      l1 += ws[i] * std::abs(v);
    } else {
      const R u = f(c - h * xs[i]), v = f(c + h * xs[i]);
      sum += ws[i] * (u + v);
      l1 += ws[i] * (std::abs(u) + std::abs(v));
    }
  }
  return Panel<R>{R(h * sum), std::abs(h) * l1};
}

namespace detail {
template <class F, class R>
R adapt(F& f, double a, double b, const Panel<R>& whole, double tol, int depth,
        int& budget) {
  const double m = 0.5 * (a + b);
  budget -= 2;
  const auto left = gauss_panel(f, a, m);
  const auto right = gauss_panel(f, m, b);
  const R both = left.value + right.value;
  const double floor = 1e-15 * (left.l1 + right.l1);
  if (depth <= 0 || budget <= 0 ||
      std::abs(both - whole.value) <= std::max(tol, floor))
    return both;
  return adapt(f, a, m, left, 0.5 * tol, depth - 1, budget) +
         adapt(f, m, b, right, 0.5 * tol, depth - 1, budget);
}
}  // namespace detail

// Adaptive bisection on Gauss-Legendre panels. The integrand must be smooth on
// [a,b] up to integrable features; endpoint singularities should be removed by
// the caller. The tolerance is relative to the integral of |f|.
template <class F>
auto integrate(F f, double a, double b, double rel_tol = 1e-14,
               double abs_tol = 1e-300, int max_depth = 30,
               int max_panels = 4000) {
  const auto whole = gauss_panel(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * whole.l1);
  int budget = max_panels;
  return detail::adapt(f, a, b, whole, tol, max_depth, budget);
}

}  // namespace bandapprox
