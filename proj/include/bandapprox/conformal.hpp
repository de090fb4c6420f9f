#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bandapprox/bands.hpp"

namespace bandapprox {

using cplx = std::complex<double>;

// A root of the differential numerator P. With im == 0 it is the real linear
// factor (x - re); with im > 0 it stands for the conjugate pair, i.e. the
// quadratic factor (x - re)^2 + im^2.
struct DifferentialZero {
  double re = 0;
  double im = 0;
  bool operator==(const DifferentialZero&) const = default;
};

// The differential dzeta = C P(x) dx / w on w^2 = prod (x - e_i). On the real
// axis we use the boundary values from the upper half plane, where
// w = prod sqrt(x - e_i) with principal roots.
struct HyperellipticData {
  std::vector<double> branchpoints;  // sorted, 2g+2 of them
  std::vector<DifferentialZero> zeros;
  double scale = 1;  // C

  int genus() const { return int(branchpoints.size()) / 2 - 1; }
  int numerator_degree() const;
  double numerator(double x) const;
  cplx numerator(cplx z) const;
  bool is_branchpoint(double x) const;
  // Throws std::invalid_argument when the counts or ordering are wrong.
  void validate() const;
  bool operator==(const HyperellipticData&) const = default;
};

// C P(x) / w(x) on the given sheet (+1 is the upper half plane boundary
// value). Throws std::domain_error at a branchpoint.
cplx differential_at(const HyperellipticData& hd, double x, int sheet = 1);

// Signed integral of dzeta along the real axis from a to b (either order),
// with no branchpoint strictly between them.
cplx increment(const HyperellipticData& hd, double a, double b);

// Integral from a (right of every branchpoint) through infinity to b (left of
// every branchpoint).
cplx wrap_increment(const HyperellipticData& hd, double a, double b);

// Integral of |C P(x)| / sqrt|prod (x - e_i)| over [a, b].
double segment_integral(const HyperellipticData& hd, double a, double b);

// Signed integrals over each interval. An interval with lo > hi is taken
// through infinity. The values are purely real or purely imaginary.
std::vector<cplx> period_vector(const HyperellipticData& hd,
                                const std::vector<Interval>& intervals);

// zeta values at every branchpoint, relative to an anchor branchpoint, so that
// zeta(x) for other points costs one or two quadratures.
class ZetaTable {
 public:
  ZetaTable(HyperellipticData hd, double anchor);

  cplx operator()(cplx x) const;
  cplx at_real(double x) const;
  const HyperellipticData& data() const { return hd_; }
  double anchor() const { return anchor_; }

 private:
  HyperellipticData hd_;
  double anchor_;
  std::vector<cplx> at_branch_;
};

// zeta(x) = integral of dzeta from the anchor branchpoint to x inside the
// closed upper half plane.
cplx map_to_polygon(const HyperellipticData& hd, cplx x, double anchor);

enum class PolygonFamily { Rect, SlitRect, TwoSlitRect, BranchedOctagon, DecagonPlus, DecagonMinus };

std::string to_string(PolygonFamily f);
PolygonFamily polygon_family_from_string(const std::string& s);

struct PolygonSpec {
  PolygonFamily family = PolygonFamily::Rect;
  double t = 1;
  int n = 1;
  int m = 0;
  double h = 0, h1 = 0, h2 = 0;
  cplx c = 0;

  // Throws std::domain_error outside the admissible parameter ranges.
  void validate() const;
};

// Corner of the polygon: whether its prevertex is a branchpoint (right-angle
// corner) or a zero of P (slit tip), and the side leaving it.
struct PolygonVertex {
  bool branch = true;
  cplx side = 0;
};

// Boundary traversal in the counterclockwise sense, starting at the top-left
// corner (-1, H) and going down the stopband wall.
std::vector<PolygonVertex> polygon_template(const PolygonSpec& spec);

double polygon_height(const PolygonSpec& spec);

struct ScSolution {
  HyperellipticData hd;
  std::vector<double> prevertices;  // one per template vertex, increasing
  std::vector<bool> branch;         // template vertex types
  std::vector<cplx> corners;        // zeta at each prevertex, anchor v1 at -1
  double residual = 0;              // max side-length error
};

// Solves the Schwarz-Christoffel parameter problem with prevertices v0, v1
// and the last vertex pinned to -1, 0 and 1. Throws NumericalError when the
// continuation fails.
ScSolution sc_solve_forward(const PolygonSpec& spec);

// Max deviation of the polygon sides implied by hd from the template.
double side_residual(const PolygonSpec& spec, const ScSolution& sol);

}  // namespace bandapprox
