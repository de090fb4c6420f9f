#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bandapprox/conformal.hpp"
#include "bandapprox/elliptic.hpp"
#include "bandapprox/errors.hpp"
#include "bandapprox/least_squares.hpp"

namespace bandapprox {

std::string to_string(PolygonFamily f) {
  switch (f) {
    case PolygonFamily::Rect: return "Rect";
    case PolygonFamily::SlitRect: return "SlitRect";
    case PolygonFamily::TwoSlitRect: return "TwoSlitRect";
    case PolygonFamily::BranchedOctagon: return "BranchedOctagon";
    case PolygonFamily::DecagonPlus: return "DecagonPlus";
    case PolygonFamily::DecagonMinus: return "DecagonMinus";
  }
  return "?";
}

PolygonFamily polygon_family_from_string(const std::string& s) {
  for (auto f : {PolygonFamily::Rect, PolygonFamily::SlitRect,
                 PolygonFamily::TwoSlitRect, PolygonFamily::BranchedOctagon,
                 PolygonFamily::DecagonPlus, PolygonFamily::DecagonMinus})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown polygon family: " + s);
}

void PolygonSpec::validate() const {
  auto fail = [](const char* msg) { throw std::domain_error(msg); };
  if (!(t > 0)) fail("polygon: t must be positive");
  if (n < 1) fail("polygon: n must be >= 1");
  auto open_unit = [](double v) { return v > -1 && v < 1; };
  switch (family) {
    case PolygonFamily::Rect:
      break;
    case PolygonFamily::SlitRect:
      if (m < 1 || m > n - 1) fail("slit rectangle: m must lie in 1..n-1");
      if (!open_unit(h)) fail("slit rectangle: h must lie in (-1,1)");
      break;
    case PolygonFamily::TwoSlitRect:
      if (m < 1 || m > n - 2) fail("two-slit rectangle: m must lie in 1..n-2");
      if (!open_unit(h1) || !open_unit(h2)) fail("two-slit rectangle: h1, h2 must lie in (-1,1)");
      break;
    case PolygonFamily::BranchedOctagon:
      if (m < 1 || m > n - 2) fail("octagon: m must lie in 1..n-2");
      if (!(open_unit(c.real()) && c.imag() > m * t && c.imag() < (m + 1) * t))
        fail("octagon: c must be interior to the rectangle raised by m quanta");
      break;
    case PolygonFamily::DecagonPlus:
    case PolygonFamily::DecagonMinus: {
      const bool plus = family == PolygonFamily::DecagonPlus;
      const int lo = plus ? 1 : 0;
      if (m < lo || m > n - 3 + (plus ? 1 : 0)) fail("decagon: m out of range");
      if (!(open_unit(h1) && open_unit(h2) && h1 < h2))
        fail("decagon: need -1 < h1 < h2 < 1");
      break;
    }
  }
}

double polygon_height(const PolygonSpec& s) {
  switch (s.family) {
    case PolygonFamily::Rect:
    case PolygonFamily::SlitRect:
    case PolygonFamily::TwoSlitRect:
      return s.n * s.t;
    default:
      return (s.n - 1) * s.t;
  }
}

std::vector<PolygonVertex> polygon_template(const PolygonSpec& s) {
  const double t = s.t, H = polygon_height(s);
  const int n = s.n, m = s.m;
  const cplx I(0, 1);
  std::vector<PolygonVertex> v{{true, -I * H}, {true, 2.0}};
  auto add = [&](bool b, cplx side) { v.push_back({b, side}); };
  switch (s.family) {
    case PolygonFamily::Rect:
      add(true, I * (n * t));
      add(true, -2.0);
      break;
    case PolygonFamily::SlitRect:
      add(true, I * (m * t));
      add(true, -(1 - s.h));
      add(false, 1 - s.h);
      add(true, I * ((n - m) * t));
      add(true, -2.0);
      break;
    case PolygonFamily::TwoSlitRect:
      add(true, I * (m * t));
      add(true, -(1 - s.h1));
      add(false, 1 - s.h1);
      add(true, I * t);
      add(true, -(1 - s.h2));
      add(false, 1 - s.h2);
      add(true, I * ((n - m - 1) * t));
      add(true, -2.0);
      break;
    case PolygonFamily::BranchedOctagon:
      add(true, I * ((m + 1) * t));
      add(true, -2.0);
      add(true, -I * t);
      add(true, 2.0);
      add(true, I * ((n - 1 - m) * t));
      add(true, -2.0);
      break;
    case PolygonFamily::DecagonPlus:
      add(true, I * ((m + 1) * t));
      add(true, -2.0);
      add(true, -I * t);
      add(true, 1 + s.h2);
      add(false, -(s.h2 - s.h1));
      add(false, 1 - s.h1);
      add(true, I * ((n - 1 - m) * t));
      add(true, -2.0);
      break;
    case PolygonFamily::DecagonMinus:
      add(true, I * ((m + 1) * t));
      add(true, -(1 - s.h1));
      add(false, s.h2 - s.h1);
      add(false, -(1 + s.h2));
      add(true, -I * t);
      add(true, 2.0);
      add(true, I * ((n - 1 - m) * t));
      add(true, -2.0);
      break;
  }
  return v;
}

namespace {

bool is_vertical(cplx side) { return side.real() == 0; }

// Gaps between v1 = 0 and v_last = 1 as a softmax of (0, p).
std::vector<double> unpack(const Eigen::VectorXd& p, int count) {
  std::vector<double> xs{-1.0, 0.0};
  std::vector<double> g(count - 2);
  double mx = 0;
  for (int i = 0; i < count - 3; ++i) mx = std::max(mx, p(i));
  double sum = std::exp(-mx);
  g[0] = sum;
  for (int i = 0; i < count - 3; ++i) {
    g[i + 1] = std::exp(p(i) - mx);
    sum += g[i + 1];
  }
  double acc = 0;
  for (int i = 0; i < count - 3; ++i) {
    acc += g[i] / sum;
    xs.push_back(acc);
  }
  xs.push_back(1.0);
  return xs;
}

Eigen::VectorXd pack(const std::vector<double>& xs) {
  const int count = int(xs.size());
  Eigen::VectorXd p(count - 3);
  const double g0 = xs[2] - xs[1];
  for (int i = 0; i < count - 3; ++i) p(i) = std::log((xs[i + 3] - xs[i + 2]) / g0);
  return p;
}

HyperellipticData layout(const std::vector<double>& xs,
                         const std::vector<PolygonVertex>& V,
                         const DifferentialZero* pair) {
  HyperellipticData hd;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (V[i].branch) hd.branchpoints.push_back(xs[i]);
    else hd.zeros.push_back({xs[i], 0.0});
  }
  if (pair) hd.zeros.push_back(*pair);
  return hd;
}

// Prevertices of a fictitious rectangle: vertical sides count fully,
// horizontal ones with weight hw, all laid out on the right wall.
std::vector<double> initial_guess(const std::vector<PolygonVertex>& V, double hw) {
  const int N = int(V.size());
  std::vector<double> s{0.0};
  for (int k = 2; k < N; ++k)
    s.push_back(s.back() + (is_vertical(V[k].side) ? 1.0 : hw) * std::abs(V[k].side));
  const double Hf = std::max(s.back(), 0.05);
  const EllipticModulus mod = modulus_from_t(Hf);
  std::vector<double> xs{-mod.kinv, -1.0};
  for (int i = 2; i < N; ++i) xs.push_back(x_map(cplx(1, s[i - 2]), mod).real());
  xs.back() = mod.kinv;
  const Mobius mb = Mobius::three_point({xs[0], xs[1], xs.back()}, {-1.0, 0.0, 1.0});
  for (auto& x : xs) x = mb(x);
  xs[0] = -1;
  xs[1] = 0;
  xs.back() = 1;
  return xs;
}

struct ScProblem {
  PolygonSpec spec;
  std::vector<PolygonVertex> V;
  double H;
  bool octagon;

  int count() const { return int(V.size()); }

  Eigen::VectorXd target() const {
    const int N = count();
    Eigen::VectorXd T(N - 2 + (octagon ? 2 : 0));
    for (int j = 1; j < N - 1; ++j)
      T(j - 1) = is_vertical(V[j].side) ? V[j].side.imag() : V[j].side.real();
    if (octagon) {
      T(N - 2) = spec.c.real();
      T(N - 1) = spec.c.imag();
    }
    return T;
  }

  // Prevertices, zero pair and scale for parameter vector p.
  bool decode(const Eigen::VectorXd& p, std::vector<double>& xs,
              DifferentialZero& pair) const {
    const int N = count();
    xs = unpack(p, N);
    for (int i = 0; i + 1 < N; ++i)
      if (!(xs[i + 1] - xs[i] > 1e-15)) return false;
    if (octagon) {
      pair = {p(N - 3), std::exp(p(N - 2))};
      if (!std::isfinite(pair.im) || pair.im <= 0) return false;
    }
    return true;
  }

  Eigen::VectorXd raw(const Eigen::VectorXd& p) const {
    const int N = count();
    Eigen::VectorXd out(N - 2 + (octagon ? 2 : 0));
    out.setConstant(NAN);
    std::vector<double> xs;
    DifferentialZero pair;
    if (!decode(p, xs, pair)) return out;
    try {
      HyperellipticData hd = layout(xs, V, octagon ? &pair : nullptr);
      std::vector<cplx> I(N - 1);
      for (int j = 0; j < N - 1; ++j) I[j] = increment(hd, xs[j], xs[j + 1]);
      const double C = (cplx(0, -H) / I[0]).real();
      for (int j = 1; j < N - 1; ++j) {
        const cplx d = C * I[j];
        out(j - 1) = is_vertical(V[j].side) ? d.imag() : d.real();
      }
      if (octagon) {
        hd.scale = C;
        const cplx zc = -1.0 + ZetaTable(hd, xs[1])(cplx(pair.re, pair.im));
        out(N - 2) = zc.real();
        out(N - 1) = zc.imag();
      }
    } catch (const std::exception&) {
      out.setConstant(NAN);
    }
    return out;
  }
};

}  // namespace

double side_residual(const PolygonSpec& spec, const ScSolution& sol) {
  const auto V = polygon_template(spec);
  const auto& xs = sol.prevertices;
  const int N = int(xs.size());
  double worst = 0;
  for (int j = 0; j < N; ++j) {
    const cplx d = j + 1 < N ? increment(sol.hd, xs[j], xs[j + 1])
                             : wrap_increment(sol.hd, xs[N - 1], xs[0]);
    worst = std::max(worst, std::abs(d - V[j].side));
  }
  if (spec.family == PolygonFamily::BranchedOctagon) {
    const auto& z = sol.hd.zeros.back();
    const cplx zc = -1.0 + map_to_polygon(sol.hd, cplx(z.re, z.im), xs[1]);
    worst = std::max(worst, std::abs(zc - spec.c));
  }
  return worst;
}

ScSolution sc_solve_forward(const PolygonSpec& spec) {
  spec.validate();
  ScProblem prob{spec, polygon_template(spec), polygon_height(spec),
                 spec.family == PolygonFamily::BranchedOctagon};
  const int N = prob.count();
  const Eigen::VectorXd T = prob.target();
  auto raw = [&](const Eigen::VectorXd& p) { return prob.raw(p); };

  double best = std::numeric_limits<double>::infinity();
  for (double hw : {0.2, 0.05, 0.5, 1.0}) {
    const std::vector<double> xs0 = initial_guess(prob.V, hw);
    Eigen::VectorXd p0(N - 3 + (prob.octagon ? 2 : 0));
    p0.head(N - 3) = pack(xs0);
    if (prob.octagon) {
      p0(N - 3) = 0.5 * (xs0[4] + xs0[5]);
      p0(N - 2) = std::log(0.5 * (xs0[5] - xs0[4]));
    }
    LmResult res = target_homotopy(raw, p0, T);
    if (res.converged) {
      LmResult pol = levenberg_marquardt(
          [&](const Eigen::VectorXd& p) { return Eigen::VectorXd(raw(p) - T); },
          res.x, {50, 1e-13, 1e-7});
      if (pol.residual < res.residual) res = pol;
    }
    best = std::min(best, res.residual);
    if (!(res.residual < 1e-9)) continue;

    ScSolution sol;
    DifferentialZero pair;
    prob.decode(res.x, sol.prevertices, pair);
    sol.hd = layout(sol.prevertices, prob.V, prob.octagon ? &pair : nullptr);
    const cplx I0 = increment(sol.hd, sol.prevertices[0], sol.prevertices[1]);
    sol.hd.scale = (cplx(0, -prob.H) / I0).real();
    for (const auto& v : prob.V) sol.branch.push_back(v.branch);
    sol.corners.push_back(cplx(-1, prob.H));
    for (int j = 0; j + 1 < N; ++j)
      sol.corners.push_back(sol.corners.back() +
                            increment(sol.hd, sol.prevertices[j], sol.prevertices[j + 1]));
    sol.residual = side_residual(spec, sol);
    return sol;
  }
  throw NumericalError("sc_solve_forward: continuation failed for " +
                           to_string(spec.family),
                       best);
}

}  // namespace bandapprox
