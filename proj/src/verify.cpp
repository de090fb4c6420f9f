#include "bandapprox/verify.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandapprox/errors.hpp"

namespace bandapprox {

namespace {

std::vector<double> lobatto_grid(const Interval& iv, int count) {
  std::vector<double> xs(count);
  for (int j = 0; j < count; ++j)
    xs[j] = iv.mid() - 0.5 * iv.length() * std::cos(std::numbers::pi * j / (count - 1));
  xs.front() = iv.lo;
  xs.back() = iv.hi;
  return xs;
}

// Maximizes |g| on [lo, hi] starting from a bracketing grid triple.
Extremum polish(const std::function<double(double)>& err, double lo, double hi,
                double guess_x, double guess_err) {
  auto neg = [&](double x) { return -std::abs(err(x)); };
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::brent_find_minima(neg, lo, hi, 52, iters);
  Extremum best{guess_x, guess_err};
  const double e = err(r.first);
  if (std::isfinite(e) && std::abs(e) > std::abs(best.error)) best = {r.first, e};
  return best;
}

// Smallest and largest value of f on iv (grid search, then Brent polish).
Interval value_range(const std::function<double(double)>& f, const Interval& iv) {
  const auto xs = lobatto_grid(iv, 128);
  std::size_t imin = 0, imax = 0;
  std::vector<double> ys(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    ys[j] = f(xs[j]);
    if (ys[j] < ys[imin]) imin = j;
    if (ys[j] > ys[imax]) imax = j;
  }
  auto refine = [&](std::size_t j, double sign) {
    const double lo = xs[j == 0 ? 0 : j - 1], hi = xs[std::min(j + 1, xs.size() - 1)];
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::brent_find_minima(
        [&](double x) { return sign * f(x); }, lo, hi, 52, iters);
    return sign > 0 ? std::min(ys[j], f(r.first)) : std::max(ys[j], f(r.first));
  };
  return {refine(imin, 1.0), refine(imax, -1.0)};
}

}  // namespace

std::vector<Extremum> band_extrema(const RealFn& R, const Band& band, int density,
                                   bool* pole) {
  if (density < 64) throw std::invalid_argument("grid density must be >= 64");
  auto err = [&](double x) { return R(x) - band.target; };
  const auto xs = lobatto_grid(band.span, density);
  std::vector<double> es(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    es[j] = err(xs[j]);
    if (!std::isfinite(es[j])) {
      if (pole) *pole = true;
      return {};
    }
  }
  const int N = int(xs.size());
  // A pole strictly between grid points shows up as a sign change; bisect it
  // and see whether the error blows up or vanishes there.
  double grid_max = 0;
  for (double e : es) grid_max = std::max(grid_max, std::abs(e));
  for (int j = 0; j + 1 < N; ++j) {
    if ((es[j] > 0) == (es[j + 1] > 0) || es[j] == 0 || es[j + 1] == 0) continue;
    double lo = xs[j], hi = xs[j + 1], elo = es[j];
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double em = err(mid);
      if (!std::isfinite(em)) {
        lo = hi = mid;
        break;
      }
      if ((em > 0) == (elo > 0)) {
        lo = mid;
        elo = em;
      } else {
        hi = mid;
      }
    }
    if (!(std::min(std::abs(err(lo)), std::abs(err(hi))) <= 1e6 * (1 + grid_max))) {
      if (pole) *pole = true;
      return {};
    }
  }
  std::vector<Extremum> out;
  for (int j = 0; j < N; ++j) {
    const double a = std::abs(es[j]);
    const bool left_ok = j == 0 || a >= std::abs(es[j - 1]);
    const bool right_ok = j == N - 1 || a >= std::abs(es[j + 1]);
    if (!(left_ok && right_ok)) continue;
    const double lo = xs[std::max(j - 1, 0)], hi = xs[std::min(j + 1, N - 1)];
    Extremum e = polish(err, lo, hi, xs[j], es[j]);
    if (!out.empty() && std::abs(e.x - out.back().x) <= 1e-12 * (1 + std::abs(e.x))) {
      if (std::abs(e.error) > std::abs(out.back().error)) out.back() = e;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

double sup_error(const RealFn& R, const std::vector<Band>& bands, int density) {
  double worst = 0;
  for (const auto& b : bands) {
    bool pole = false;
    for (const auto& e : band_extrema(R, b, density, &pole))
      worst = std::max(worst, std::abs(e.error));
    if (pole) return INFINITY;
  }
  return worst;
}

Alternation alternation_points(const RealFn& R, const std::vector<Band>& bands,
                               double mu, double rel_tol, int density) {
  std::vector<Extremum> touches;
  for (const auto& b : bands)
    for (const auto& e : band_extrema(R, b, density))
      if (std::abs(e.error) >= (1 - rel_tol) * mu) touches.push_back(e);
  std::sort(touches.begin(), touches.end(),
            [](const Extremum& a, const Extremum& b) { return a.x < b.x; });
  // Distinct touches closer than the grid can resolve are one touch.
  std::vector<Extremum> raw;
  for (const auto& t : touches) {
    if (!raw.empty() && std::abs(t.x - raw.back().x) <= 1e-10 * (1 + std::abs(t.x)) &&
        (t.error > 0) == (raw.back().error > 0))
      continue;
    raw.push_back(t);
  }
  Alternation out;
  out.raw_touches = int(raw.size());
  // Same-sign neighbours (e.g. both ends of a gap inside one target level)
  // keep the larger touch; this yields the longest alternating subsequence.
  std::vector<Extremum> merged;
  for (const auto& t : raw) {
    if (!merged.empty() && (t.error > 0) == (merged.back().error > 0)) {
      if (std::abs(t.error) > std::abs(merged.back().error)) merged.back() = t;
      continue;
    }
    merged.push_back(t);
  }
  for (const auto& t : merged) {
    out.points.push_back(t.x);
    out.signs.push_back(t.error > 0 ? 1 : -1);
  }
  // Cyclic order: the last touch is followed by the first one through infinity.
  out.alternating = merged.size() >= 2 && (merged.front().error > 0) != (merged.back().error > 0) &&
                    mu > 0 && std::isfinite(mu);
  return out;
}

Sigma topological_class(const RationalFunction& R, const BandSystem& bands) {
  const double dev = sup_error([&](double x) { return R(x); }, bands.bands(), 128);
  if (!(dev < 1)) throw std::domain_error("topological_class: deviation must be below 1");
  const auto num = trim(R.num, 1e-13);
  const int n = R.degree();
  Sigma counts{0, 0, 0};
  for (const cplx z : R.zeros(1e-13)) {
    const double scale = 1 + std::abs(z);
    if (std::abs(z.imag()) > 1e-7 * scale) continue;
    const double x = z.real();
    if (bands.t1().contains(x)) ++counts[0];
    else if (bands.t12().contains(x)) ++counts[1];
    else if (x > bands.e2plus.hi || x < bands.eminus.lo) ++counts[2];
  }
  counts[2] += std::max(0, n - int(num.size() - 1));
  return {counts[0] % 2, counts[1] % 2, counts[2] % 2};
}

int extremality_number(const RationalFunction& R, const EllipticModulus& mod,
                       double value_tol) {
  const int n = R.degree();
  if (n < 1) throw std::domain_error("extremality_number: R is constant");
  const std::vector<double> Q{1.0, -1.0, mod.kinv, -mod.kinv};
  auto in_Q = [&](cplx v) {
    if (is_infinite(v)) return false;
    for (double q : Q)
      if (std::abs(v - q) <= value_tol * std::max(1.0, std::abs(q))) return true;
    return false;
  };
  // Finite critical points in the scaled variable; huge roots belong to infinity.
  std::vector<cplx> roots;
  for (cplx s : polynomial_roots(trim(R.wronskian(), 1e-13)))
    if (std::abs(s) < 1e8) roots.push_back(s);
  std::vector<bool> used(roots.size(), false);
  int g = 1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    int ord = 0;
    cplx centre = 0;
    for (std::size_t j = i; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= 1e-5 * (1 + std::abs(roots[i]))) {
        used[j] = true;
        centre += roots[j];
        ++ord;
      }
    }
    centre /= double(ord);
    const cplx v = R(R.center + R.halfwidth * centre);
    g += in_Q(v) ? ord / 2 : ord;
  }
  const int ord_inf = 2 * n - 2 - int(roots.size());
  if (ord_inf > 0) {
    // Value at infinity from the leading coefficients.
    const auto p = trim(R.num, 1e-13), q = trim(R.den, 1e-13);
    cplx v_inf;
    if (p.size() > q.size()) v_inf = infinity_marker();
    else if (p.size() < q.size()) v_inf = 0.0;
    else v_inf = p.back() / q.back();
    g += in_Q(v_inf) ? ord_inf / 2 : ord_inf;
  }
  return g;
}

std::vector<Interval> extended_bands(const RationalFunction& R, const BandSystem& bands) {
  auto f = [&](double x) { return R(x); };
  // Value ranges attained on each band.
  std::vector<Interval> values;
  for (const auto& b : bands.bands()) values.push_back(value_range(f, b.span));
  std::sort(values.begin(), values.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> V;
  for (const auto& v : values) {
    if (!V.empty() && v.lo <= V.back().hi) V.back().hi = std::max(V.back().hi, v.hi);
    else V.push_back(v);
  }
  const double vtol = 1e-9;
  auto member = [&](double x) {
    for (const auto& b : bands.bands())
      if (b.span.contains(x)) return true;
    const double y = f(x);
    if (!std::isfinite(y)) return false;
    for (const auto& v : V)
      if (y >= v.lo - vtol * (1 + std::abs(v.lo)) && y <= v.hi + vtol * (1 + std::abs(v.hi)))
        return true;
    return false;
  };
  // Candidate boundaries: real solutions of R(x) = c for each range endpoint.
  std::vector<double> cand;
  for (const auto& v : V) {
    for (double c : {v.lo, v.hi}) {
      std::vector<double> poly(std::max(R.num.size(), R.den.size()), 0.0);
      for (std::size_t k = 0; k < R.num.size(); ++k) poly[k] += R.num[k];
      for (std::size_t k = 0; k < R.den.size(); ++k) poly[k] -= c * R.den[k];
      for (cplx s : polynomial_roots(trim(poly, 1e-14)))
        if (std::abs(s.imag()) <= 1e-6 * (1 + std::abs(s)) && std::abs(s) < 1e8)
          cand.push_back(R.center + R.halfwidth * s.real());
    }
  }
  const auto ends = bands.endpoints();
  for (double& c : cand)
    for (double e : ends)
      if (std::abs(c - e) <= 1e-12 * (1 + std::abs(e))) c = e;
  cand.insert(cand.end(), ends.begin(), ends.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-13 * (1 + std::abs(a)); }),
             cand.end());
  // Pieces between consecutive candidates.
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < cand.size(); ++i)
    if (member(0.5 * (cand[i] + cand[i + 1]))) pieces.push_back({cand[i], cand[i + 1]});
  std::vector<Interval> merged;
  for (const auto& p : pieces) {
    if (!merged.empty() && p.lo - merged.back().hi <= 1e-12 * (1 + std::abs(p.lo)))
      merged.back().hi = p.hi;
    else
      merged.push_back(p);
  }
  // The piece through infinity.
  const double span = cand.back() - cand.front() + 1;
  const bool right = member(cand.back() + span), left = member(cand.front() - span);
  if (right && left) {
    double lo = cand.back(), hi = cand.front();
    if (!merged.empty() && merged.back().hi == cand.back()) {
      lo = merged.back().lo;
      merged.pop_back();
    }
    if (!merged.empty() && merged.front().lo == cand.front()) {
      hi = merged.front().hi;
      merged.erase(merged.begin());
    }
    merged.push_back({lo, hi});
  }
  return merged;
}

bool check_theorem1(const std::vector<Interval>& extended, const BandSystem& bands) {
  const auto e = bands.endpoints();
  const double tol = 1e-8 * (1 + e[5] - e[0]);
  std::vector<Interval> pieces;
  auto subtract = [&](Interval iv) {
    std::vector<Interval> cur{iv};
    for (const auto& b : bands.bands()) {
      std::vector<Interval> next;
      for (const auto& c : cur) {
        if (c.hi <= b.span.lo || c.lo >= b.span.hi) {
          next.push_back(c);
          continue;
        }
        if (c.lo < b.span.lo) next.push_back({c.lo, b.span.lo});
        if (c.hi > b.span.hi) next.push_back({b.span.hi, c.hi});
      }
      cur = next;
    }
    for (const auto& c : cur)
      if (c.length() > tol) pieces.push_back(c);
  };
  for (const auto& iv : extended) {
    if (iv.lo <= iv.hi) {
      subtract(iv);
    } else {
      // Through infinity: both halves lie in T2 apart from band overlap.
      subtract({iv.lo, INFINITY});
      subtract({-INFINITY, iv.hi});
    }
  }
  int in_t12 = 0;
  for (const auto& p : pieces) {
    const double mid = std::isfinite(p.length()) ? p.mid() : (std::isinf(p.lo) ? p.hi - 1 : p.lo + 1);
    if (!bands.t12().contains(mid)) return false;
    ++in_t12;
  }
  return in_t12 <= 1;
}

FitResult rational_fit(const std::vector<std::pair<double, double>>& samples, int n) {
  if (samples.size() < std::size_t(2 * n + 2))
    throw std::invalid_argument("rational_fit: need at least 2n+2 samples");
  std::vector<double> fx, fy, hx, hy;
  const bool hold = samples.size() >= std::size_t(4 * (2 * n + 1) / 3 + 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (hold && i % 4 == 3) {
      hx.push_back(samples[i].first);
      hy.push_back(samples[i].second);
    } else {
      fx.push_back(samples[i].first);
      fy.push_back(samples[i].second);
    }
  }
  if (!hold) {
    hx = fx;
    hy = fy;
  }
  FitResult out;
  out.r = linearized_fit(fx, fy, n);
  double worst = 0;
  for (std::size_t i = 0; i < hx.size(); ++i)
    worst = std::max(worst, std::abs(out.r(hx[i]) - hy[i]) / std::max(1.0, std::abs(hy[i])));
  out.residual = worst;
  return out;
}

VerificationReport verify_solution(const FilterSolution& sol, const BandSystem& bands,
                                   int density) {
  VerificationReport rep;
  const double scale = sol.scale();
  auto R = [&](double x) { return scale * eval_solution(sol, x); };
  const auto bl = bands.bands();
  rep.mu = sup_error(R, bl, density);
  const Alternation alt = alternation_points(R, bl, rep.mu, 1e-6, density);
  rep.alternation_points = alt.points;
  rep.alternation_signs = alt.signs;
  rep.alternation_count = alt.count();
  rep.alternating = alt.alternating;

  const int n = sol.n;
  const int per_band = (4 * n + 8 + 2) / 3;
  std::vector<std::pair<double, double>> samples;
  for (const auto& b : bl)
    for (int i = 0; i < per_band; ++i) {
      const double x = b.span.mid() - 0.5 * b.span.length() *
                                          std::cos(std::numbers::pi * (i + 0.5) / per_band);
      samples.push_back({x, eval_solution(sol, x)});
    }
  std::sort(samples.begin(), samples.end());
  const FitResult fit = rational_fit(samples, n);
  rep.degree_fit_residual = fit.residual;
  RationalFunction scaled = fit.r;
  for (double& c : scaled.num) c *= scale;
  try {
    rep.sigma = topological_class(scaled, bands);
  } catch (const std::domain_error&) {
    rep.sigma_defined = false;
  }
  rep.extremality = extremality_number(fit.r, sol.mod);
  rep.extended_segments = extended_bands(fit.r, bands);
  rep.theorem1_ok = check_theorem1(rep.extended_segments, bands);
  return rep;
}

}  // namespace bandapprox
