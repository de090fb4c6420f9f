#include "bandapprox/zolotarev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandapprox/errors.hpp"

namespace bandapprox {

ZolotarevFraction make_zolotarev(int n, double t) {
  if (n < 1) throw std::domain_error("Zolotarev degree must be >= 1");
  ZolotarevFraction zf;
  zf.n = n;
  zf.mod_small = modulus_from_t(t);
  zf.mod_big = modulus_from_t(n * t);
  return zf;
}

cplx eval_Z(const ZolotarevFraction& zf, cplx x) {
  if (is_infinite(x)) {
    // x = inf sits at u = n tau; x(n tau | tau) is 0 for even n, inf for odd.
    return zf.n % 2 == 0 ? cplx(0.0) : infinity_marker();
  }
  if (x.imag() < 0) return std::conj(eval_Z(zf, std::conj(x)));
  const cplx u = inverse_x(x, zf.mod_big);
  cplx z = x_map(u, zf.mod_small);
  if (x.imag() == 0 && !is_infinite(z)) z = z.real();
  return z;
}

std::pair<Interval, Interval> zolotarev_bands(const ZolotarevFraction& zf) {
  const double kb = zf.mod_big.kinv;
  return {{-kb, -1.0}, {1.0, kb}};
}

Rescaling rescaled_solution(const ZolotarevFraction& zf) {
  const double k = zf.mod_small.k();
  return {2 * k / (k + 1), (1 - k) / (1 + k)};
}

RationalFunction as_rational(const ZolotarevFraction& zf) {
  const int n = zf.n;
  const double kb = zf.mod_big.kinv;
  std::vector<double> xs, ys;
  const int pts = 2 * n + 2;
  for (int i = 0; i < pts; ++i) {
    const double x = kb * std::cos(std::numbers::pi * (i + 0.5) / pts);
    xs.push_back(x);
    ys.push_back(eval_Z(zf, x).real());
  }
  RationalFunction r = linearized_fit(xs, ys, n);
  double worst = 0;
  for (int i = 0; i < 4 * n; ++i) {
    const double x = kb * std::cos(std::numbers::pi * (i + 0.25) / (4 * n));
    const double z = eval_Z(zf, x).real();
    worst = std::max(worst, std::abs(r(x) - z) / std::max(1.0, std::abs(z)));
  }
  if (!(worst < 1e-9))
    throw NumericalError("as_rational: fit residual above tolerance", worst);
  return r;
}

std::vector<cplx> zolotarev_poles(const ZolotarevFraction& zf) {
  std::vector<cplx> out;
  const double t = zf.mod_small.t;
  for (int j = 0; 2 * j + 1 < zf.n; ++j) {
    const cplx p = x_map(cplx(0, (2 * j + 1) * t), zf.mod_big);
    out.push_back(std::conj(p));
    out.push_back(p);
  }
  return out;
}

BandSystem genus1_three_band(const ZolotarevFraction& zf, int m, double v1,
                             double v2) {
  const int n = zf.n;
  if (m < 0 || m > n - 1) throw std::domain_error("genus1_three_band: m out of range");
  if (!(m <= v1 && v1 < v2 && v2 <= m + 1))
    throw std::domain_error("genus1_three_band: need m <= v1 < v2 <= m+1");
  if (v1 == 0) throw std::domain_error("genus1_three_band: E1+ would collapse");
  if (v2 == n) throw std::domain_error("genus1_three_band: E2+ would collapse");
  const double t = zf.mod_small.t;
  const double kb = zf.mod_big.kinv;
  const double a = x_map(cplx(1, v1 * t), zf.mod_big).real();
  const double b = x_map(cplx(1, v2 * t), zf.mod_big).real();
  BandSystem bs{{-kb, -1.0}, {1.0, a}, {b, kb}};
  bs.validate();
  return bs;
}

}  // namespace bandapprox
