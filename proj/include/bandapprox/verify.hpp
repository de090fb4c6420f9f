#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bandapprox/bands.hpp"
#include "bandapprox/elliptic.hpp"
#include "bandapprox/rational.hpp"
#include "bandapprox/solutions.hpp"

namespace bandapprox {

using RealFn = std::function<double(double)>;

// Local maximum of |R - S_E| on a band.
struct Extremum {
  double x;
  double error;  // signed R(x) - target
};

// Polished local maxima of |R - target| over a Chebyshev-Lobatto grid of the
// band. Returns nullopt-like empty vector plus pole flag when R is not finite
// somewhere on the grid.
std::vector<Extremum> band_extrema(const RealFn& R, const Band& band,
                                   int grid_density, bool* pole = nullptr);

// max |R - S_E| over the bands; +inf if R has a pole on a band.
double sup_error(const RealFn& R, const std::vector<Band>& bands,
                 int grid_density = 256);

struct Alternation {
  std::vector<double> points;  // one per envelope touch, signs alternating
  std::vector<int> signs;
  int raw_touches = 0;         // before merging same-sign neighbours
  bool alternating = false;    // points alternate cyclically (through infinity)
  int count() const { return int(points.size()); }
};

Alternation alternation_points(const RealFn& R, const std::vector<Band>& bands,
                               double mu, double rel_tol = 1e-6,
                               int grid_density = 256);

// Parities of the numbers of zeros of R (with multiplicity, a zero at
// infinity counted in T2) in T1, T12 and T2. Throws std::domain_error when the
// deviation on the bands is not below 1.
Sigma topological_class(const RationalFunction& R, const BandSystem& bands);

// 1 + sum over critical points with values outside Q of ord dR, plus the sum
// of floor(ord/2) over those with values in Q = {+-1, +-1/k}. R must be the
// unscaled Ansatz function.
int extremality_number(const RationalFunction& R, const EllipticModulus& mod,
                       double value_tol = 1e-7);

// Real part of R^{-1}(R(E)) as maximal intervals. An interval with lo > hi
// passes through infinity.
std::vector<Interval> extended_bands(const RationalFunction& R,
                                     const BandSystem& bands);

// True iff E# \ E avoids T1 and T2 and meets T12 in at most one interval.
bool check_theorem1(const std::vector<Interval>& extended, const BandSystem& bands);

struct FitResult {
  RationalFunction r;
  double residual = 0;  // max relative error on held-out samples
};

// Degree-n linearized least squares on three quarters of the samples; the
// remaining quarter is held out for the residual.
FitResult rational_fit(const std::vector<std::pair<double, double>>& samples, int n);

struct VerificationReport {
  double mu = 0;
  std::vector<double> alternation_points;
  std::vector<int> alternation_signs;
  int alternation_count = 0;
  bool alternating = false;
  Sigma sigma{0, 0, 0};
  int extremality = 0;
  std::vector<Interval> extended_segments;
  bool theorem1_ok = false;
  double degree_fit_residual = 0;
  bool sigma_defined = true;

  bool passed(int n) const { return alternation_count == 2 * n + 2; }
};

// Full certification of a solution on bands in user coordinates (the
// solution's chart is applied on evaluation). Errors are measured for the
// rescaled function.
VerificationReport verify_solution(const FilterSolution& sol, const BandSystem& bands,
                                   int grid_density = 256);

}  // namespace bandapprox
