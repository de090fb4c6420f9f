#pragma once

#include <utility>

#include "bandapprox/bands.hpp"
#include "bandapprox/elliptic.hpp"
#include "bandapprox/rational.hpp"

namespace bandapprox {

// Z_n defined by Z_n(x(u | n tau)) = x(u | tau).
struct ZolotarevFraction {
  int n = 1;
  EllipticModulus mod_big;    // modulus n tau
  EllipticModulus mod_small;  // modulus tau
};

ZolotarevFraction make_zolotarev(int n, double t);

cplx eval_Z(const ZolotarevFraction& zf, cplx x);

// E- = -[1, kinv(n tau)] and E+ = [1, kinv(n tau)].
std::pair<Interval, Interval> zolotarev_bands(const ZolotarevFraction& zf);

struct Rescaling {
  double scale;  // 2k/(k+1)
  double mu;     // (1-k)/(1+k)
};
Rescaling rescaled_solution(const ZolotarevFraction& zf);

// Coefficient form, fitted by interpolation at 2n+2 Chebyshev points of
// [-kinv(n tau), kinv(n tau)] and checked against eval_Z.
RationalFunction as_rational(const ZolotarevFraction& zf);

// Poles x(i(2j+1)t | n tau) for 2j+1 < n, in conjugate pairs. Odd n also has
// a pole at infinity, which is not listed.
std::vector<cplx> zolotarev_poles(const ZolotarevFraction& zf);

// Three-band system obtained by removing the wall piece 1 + (v1, v2) tau
// from the passband of Z_n, in the coordinates of x(. | n tau).
BandSystem genus1_three_band(const ZolotarevFraction& zf, int m, double v1,
                             double v2);

}  // namespace bandapprox
