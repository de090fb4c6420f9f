#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bandapprox/bands.hpp"
#include "bandapprox/conformal.hpp"
#include "bandapprox/elliptic.hpp"

namespace bandapprox {

enum class Family {
  Genus1Zolotarev,
  Genus2Stiefel,
  Genus3TwoSlit,
  Genus3Octagon,
  Genus3DecagonPlus,
  Genus3DecagonMinus
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);
int family_genus(Family f);
PolygonFamily polygon_of(Family f);

using Sigma = std::array<int, 3>;  // parities in T1, T12, T2

// Declared class: (1,0,n+1) for the first three families, (1,1,n) for the rest.
Sigma declared_sigma(Family f, int n);

// Family-specific parameters. Only the fields of the family are meaningful:
// Genus1 (v1, v2), Genus2 (h, v), TwoSlit and decagons (h1, h2), octagon (c).
struct FamilyParams {
  double h = 0, v = 0;
  double h1 = 0, h2 = 0;
  double v1 = 0, v2 = 0;
  cplx c = 0;
  bool operator==(const FamilyParams&) const = default;
};

// Everything needed to evaluate the Ansatz
//   R(x) = x(zeta(chart(x)) + phase | tau),  zeta = integral of dzeta from anchor.
// R is stored without the 2k/(k+1) rescaling.
struct FilterSolution {
  Family family = Family::Genus2Stiefel;
  int n = 1;
  int m = 0;
  EllipticModulus mod;
  HyperellipticData hd;
  double anchor = 0;  // branchpoint where zeta = 0
  cplx phase = -1.0;  // rectangle offset A(e), see phase_shift
  Sigma sigma{1, 0, 0};
  double mu = 0;
  FamilyParams params;
  Mobius chart;  // maps user coordinates to the coordinates of hd
  // Prevertex table of the polygon (empty for the genus-1 family).
  std::vector<double> prevertices;
  std::vector<bool> branch;

  double scale() const { return 2 * mod.k() / (mod.k() + 1); }
  // Builds the cached zeta table; required before evaluation.
  void prepare();
  const ZetaTable& zeta() const;
  // Field-wise equality; the cached table is ignored.
  bool operator==(const FilterSolution& o) const;

 private:
  std::shared_ptr<const ZetaTable> zeta_;
};

// Unscaled R at real x (user coordinates); +inf at a pole.
double eval_solution(const FilterSolution& sol, double x);
cplx eval_solution(const FilterSolution& sol, cplx x);

// Rectangle offset for R(e) in {+1, -1, +kinv, -kinv}: +-1 or +-1 + tau.
cplx phase_shift(double anchor_value, const EllipticModulus& mod);

struct Construction {
  FilterSolution solution;
  BandSystem bands;
};

Construction forward_construct(Family family, double t, int n, int m,
                               const FamilyParams& extra);

// Candidate families for a class, most likely first. Throws std::domain_error
// when the parities do not add up to n.
std::vector<Family> classify(const BandSystem& bands, int n, const Sigma& sigma);

// Point on the vertical polygon side between prevertices lo and hi whose
// image has imaginary part y.
double wall_point(const ZetaTable& zeta, double lo, double hi, double y);

}  // namespace bandapprox
