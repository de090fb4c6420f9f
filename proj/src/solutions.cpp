#include "bandapprox/solutions.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <stdexcept>

#include "bandapprox/zolotarev.hpp"

namespace bandapprox {

std::string to_string(Family f) {
  switch (f) {
    case Family::Genus1Zolotarev: return "Genus1Zolotarev";
    case Family::Genus2Stiefel: return "Genus2Stiefel";
    case Family::Genus3TwoSlit: return "Genus3TwoSlit";
    case Family::Genus3Octagon: return "Genus3Octagon";
    case Family::Genus3DecagonPlus: return "Genus3DecagonPlus";
    case Family::Genus3DecagonMinus: return "Genus3DecagonMinus";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  for (auto f : {Family::Genus1Zolotarev, Family::Genus2Stiefel, Family::Genus3TwoSlit,
                 Family::Genus3Octagon, Family::Genus3DecagonPlus,
                 Family::Genus3DecagonMinus})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown family: " + s);
}

int family_genus(Family f) {
  switch (f) {
    case Family::Genus1Zolotarev: return 1;
    case Family::Genus2Stiefel: return 2;
    default: return 3;
  }
}

PolygonFamily polygon_of(Family f) {
  switch (f) {
    case Family::Genus1Zolotarev: return PolygonFamily::Rect;
    case Family::Genus2Stiefel: return PolygonFamily::SlitRect;
    case Family::Genus3TwoSlit: return PolygonFamily::TwoSlitRect;
    case Family::Genus3Octagon: return PolygonFamily::BranchedOctagon;
    case Family::Genus3DecagonPlus: return PolygonFamily::DecagonPlus;
    case Family::Genus3DecagonMinus: return PolygonFamily::DecagonMinus;
  }
  return PolygonFamily::Rect;
}

Sigma declared_sigma(Family f, int n) {
  switch (f) {
    case Family::Genus1Zolotarev:
    case Family::Genus2Stiefel:
    case Family::Genus3TwoSlit:
      return {1, 0, (n + 1) % 2};
    default:
      return {1, 1, n % 2};
  }
}

void FilterSolution::prepare() { zeta_ = std::make_shared<ZetaTable>(hd, anchor); }

bool FilterSolution::operator==(const FilterSolution& o) const {
  return family == o.family && n == o.n && m == o.m && mod == o.mod && hd == o.hd &&
         anchor == o.anchor && phase == o.phase && sigma == o.sigma && mu == o.mu &&
         params == o.params && chart == o.chart && prevertices == o.prevertices &&
         branch == o.branch;
}

const ZetaTable& FilterSolution::zeta() const {
  if (!zeta_) throw std::logic_error("FilterSolution::prepare() was not called");
  return *zeta_;
}

cplx eval_solution(const FilterSolution& sol, cplx x) {
  cplx y;
  if (x.imag() == 0) {
    double r = sol.chart(x.real());
    if (!std::isfinite(r)) r = std::copysign(1e12, r);
    y = r;
  } else {
    const Mobius& c = sol.chart;
    y = (c.a * x + c.b) / (c.c * x + c.d);
    if (y.imag() < 0) y = std::conj(y);
  }
  const cplx u = sol.zeta()(y) + sol.phase;
  cplx r = x_map(u, sol.mod);
  if (x.imag() < 0 && !is_infinite(r)) r = std::conj(r);
  return r;
}

double eval_solution(const FilterSolution& sol, double x) {
  const cplx r = eval_solution(sol, cplx(x, 0.0));
  if (is_infinite(r)) return INFINITY;
  return r.real();
}

cplx phase_shift(double v, const EllipticModulus& mod) {
  const double tol = 1e-12 * (1 + std::abs(v));
  if (std::abs(v - 1) <= tol) return 1.0;
  if (std::abs(v + 1) <= tol) return -1.0;
  if (std::abs(v - mod.kinv) <= tol * mod.kinv) return cplx(1, mod.t);
  if (std::abs(v + mod.kinv) <= tol * mod.kinv) return cplx(-1, mod.t);
  throw std::domain_error("phase_shift: anchor value must be +-1 or +-1/k");
}

double wall_point(const ZetaTable& zeta, double lo, double hi, double y) {
  auto f = [&](double x) { return zeta.at_real(x).imag() - y; };
  double flo = f(lo), fhi = f(hi);
  if (std::abs(flo) < 1e-15) return lo;
  if (std::abs(fhi) < 1e-15) return hi;
  if (flo * fhi > 0) throw std::domain_error("wall_point: height not on this side");
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

namespace {

Construction genus1(double t, int n, int m, const FamilyParams& p) {
  const ZolotarevFraction zf = make_zolotarev(n, t);
  Construction out;
  out.bands = genus1_three_band(zf, m, p.v1, p.v2);
  FilterSolution& s = out.solution;
  s.family = Family::Genus1Zolotarev;
  s.n = n;
  s.m = m;
  s.mod = zf.mod_small;
  const double kb = zf.mod_big.kinv;
  s.hd.branchpoints = {-kb, -1.0, 1.0, kb};
  s.hd.scale = -kb / zf.mod_big.K;
  s.anchor = -1.0;
  s.phase = phase_shift(-1.0, s.mod);
  s.params.v1 = p.v1;
  s.params.v2 = p.v2;
  return out;
}

Construction polygonal(Family family, double t, int n, int m, const FamilyParams& p) {
  PolygonSpec spec;
  spec.family = polygon_of(family);
  spec.t = t;
  spec.n = n;
  spec.m = m;
  spec.h = p.h;
  spec.h1 = p.h1;
  spec.h2 = p.h2;
  spec.c = p.c;
  spec.validate();
  if (family == Family::Genus2Stiefel) {
    if (!(p.v >= m - 1 && p.v <= m + 1 && p.v > 0 && p.v < n))
      throw std::domain_error("Genus2Stiefel: v must lie in [m-1, m+1] and inside (0, n)");
  }
  const ScSolution sc = sc_solve_forward(spec);

  Construction out;
  FilterSolution& s = out.solution;
  s.family = family;
  s.n = n;
  s.m = m;
  s.mod = modulus_from_t(t);
  s.hd = sc.hd;
  s.anchor = sc.prevertices[1];
  s.phase = phase_shift(-1.0, s.mod);
  s.params = p;
  s.prevertices = sc.prevertices;
  s.branch = sc.branch;
  s.prepare();

  const auto& xs = sc.prevertices;
  const std::size_t N = xs.size();
  BandSystem& b = out.bands;
  b.eminus = {xs[0], xs[1]};
  b.e1plus = {xs[2], xs[3]};
  b.e2plus = {xs[N - 2], xs[N - 1]};
  if (family == Family::Genus2Stiefel) {
    if (p.v >= m) {
      if (p.v > m) b.e2plus.lo = wall_point(s.zeta(), xs[5], xs[6], p.v * t);
    } else {
      b.e1plus.hi = wall_point(s.zeta(), xs[2], xs[3], p.v * t);
    }
  }
  b.validate();
  return out;
}

}  // namespace

Construction forward_construct(Family family, double t, int n, int m,
                               const FamilyParams& extra) {
  Construction c = family == Family::Genus1Zolotarev
                       ? genus1(t, n, m, extra)
                       : polygonal(family, t, n, m, extra);
  FilterSolution& s = c.solution;
  s.sigma = declared_sigma(family, n);
  s.mu = (1 - s.mod.k()) / (1 + s.mod.k());
  s.hd.validate();
  s.prepare();
  return c;
}

std::vector<Family> classify(const BandSystem& bands, int n, const Sigma& sigma) {
  bands.validate();
  if (n < 1) throw std::domain_error("classify: n must be >= 1");
  for (int v : sigma)
    if (v != 0 && v != 1) throw std::domain_error("classify: sigma entries must be 0 or 1");
  if ((sigma[0] + sigma[1] + sigma[2]) % 2 != n % 2)
    throw std::domain_error("classify: sigma parities must add up to n mod 2");
  if (sigma == declared_sigma(Family::Genus2Stiefel, n))
    return {Family::Genus2Stiefel, Family::Genus1Zolotarev, Family::Genus3TwoSlit};
  if (sigma == declared_sigma(Family::Genus3Octagon, n))
    return {Family::Genus3Octagon, Family::Genus3DecagonPlus, Family::Genus3DecagonMinus};
  return {};
}

}  // namespace bandapprox
