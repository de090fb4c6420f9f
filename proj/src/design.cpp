#include "bandapprox/design.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>

#include "bandapprox/errors.hpp"
#include "bandapprox/least_squares.hpp"
#include "bandapprox/verify.hpp"
#include "bandapprox/zolotarev.hpp"

namespace bandapprox {

namespace {

bool vertical(cplx side) { return side.real() == 0; }

// The six band endpoints after sending E- to [-1, 0] and the right end of
// E2+ to 1.
struct Gauge {
  Mobius chart;
  double a, b, c;  // E1+ = [a, b], E2+ = [c, 1]
};

Gauge make_gauge(const BandSystem& user) {
  Gauge g;
  g.chart = Mobius::three_point({user.eminus.lo, user.eminus.hi, user.e2plus.hi},
                                {-1.0, 0.0, 1.0});
  g.a = g.chart(user.e1plus.lo);
  g.b = g.chart(user.e1plus.hi);
  g.c = g.chart(user.e2plus.lo);
  return g;
}

// Period equations of one polygon family: some prevertices are pinned to band
// endpoints, a contiguous run of them is free.
struct PeriodSystem {
  std::vector<PolygonVertex> V;
  std::vector<double> fixed;  // NaN marks a free slot
  int run_lo = 0, run_hi = 0;  // free slots [run_lo, run_hi]
  bool pair = false;
  double height_units = 1;     // H / t
  std::vector<std::pair<int, int>> groups;  // branch to branch, equations only
  Eigen::VectorXd target;

  int count() const { return int(V.size()); }
  int run() const { return run_hi - run_lo + 1; }
  int unknowns() const { return run() + (pair ? 2 : 0); }

  bool decode(const Eigen::VectorXd& p, std::vector<double>& xs,
              DifferentialZero& z) const {
    xs = fixed;
    const double lo = fixed[run_lo - 1], hi = fixed[run_hi + 1];
    const int k = run();
    double mx = 0;
    for (int i = 0; i < k; ++i) mx = std::max(mx, p(i));
    std::vector<double> g(k + 1);
    g[0] = std::exp(-mx);
    double sum = g[0];
    for (int i = 0; i < k; ++i) sum += g[i + 1] = std::exp(p(i) - mx);
    double acc = 0;
    for (int i = 0; i < k; ++i) {
      acc += g[i] / sum;
      xs[run_lo + i] = lo + (hi - lo) * acc;
    }
    // Near collisions make the quadrature crawl; treat them as infeasible.
    const double gap = 1e-8 * (hi - lo);
    for (int i = 0; i + 1 < count(); ++i)
      if (!(xs[i + 1] - xs[i] > gap)) return false;
    if (pair) {
      z = {p(k), std::exp(p(k + 1))};
      if (!std::isfinite(z.im) || z.im <= 0) return false;
    }
    return true;
  }

  HyperellipticData layout(const std::vector<double>& xs, const DifferentialZero& z) const {
    HyperellipticData hd;
    for (int i = 0; i < count(); ++i) {
      if (V[i].branch) hd.branchpoints.push_back(xs[i]);
      else hd.zeros.push_back({xs[i], 0.0});
    }
    if (pair) hd.zeros.push_back(z);
    return hd;
  }

  // Side increments with the scale fixed by |T1| = 2; nullopt if degenerate.
  struct Sides {
    std::vector<cplx> d;
    double C = 0, t = 0;
  };
  std::optional<Sides> sides(const HyperellipticData& hd0, const std::vector<double>& xs) const {
    HyperellipticData hd = hd0;
    hd.scale = 1;
    Sides s;
    for (int j = 0; j + 1 < count(); ++j) s.d.push_back(increment(hd, xs[j], xs[j + 1]));
    s.C = 2 / s.d[1].real();
    const double H = -(s.C * s.d[0]).imag();
    s.t = H / height_units;
    if (!std::isfinite(s.C) || !(s.t > 0)) return std::nullopt;
    for (auto& v : s.d) v *= s.C;
    return s;
  }

  Eigen::VectorXd raw(const Eigen::VectorXd& p) const {
    Eigen::VectorXd out(groups.size());
    out.setConstant(NAN);
    std::vector<double> xs;
    DifferentialZero z;
    if (!decode(p, xs, z)) return out;
    try {
      const auto s = sides(layout(xs, z), xs);
      if (!s) return out;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        cplx sum = 0;
        bool vert = false;
        for (int j = groups[g].first; j < groups[g].second; ++j) {
          sum += s->d[j];
          vert = vert || vertical(V[j].side);
        }
        out(g) = vert ? sum.imag() / s->t : sum.real();
      }
    } catch (const std::exception&) {
      out.setConstant(NAN);
    }
    return out;
  }
};

PeriodSystem make_system(Family fam, int n, int m, int variant, const Gauge& gg) {
  PolygonSpec spec;
  spec.family = polygon_of(fam);
  spec.t = 1;
  spec.n = n;
  spec.m = m;
  spec.h1 = -0.5;
  spec.h2 = 0.5;
  spec.c = cplx(0, m + 0.5);
  PeriodSystem ps;
  ps.V = polygon_template(spec);
  ps.height_units = polygon_height(spec);
  ps.pair = fam == Family::Genus3Octagon;
  const int N = ps.count();
  ps.fixed.assign(N, NAN);
  ps.fixed[0] = -1;
  ps.fixed[1] = 0;
  ps.fixed[2] = gg.a;
  ps.fixed[N - 1] = 1;
  if (fam == Family::Genus2Stiefel && variant == 1) {
    // E1+ ends on a wall: the corner after a is free.
    ps.fixed[N - 2] = gg.c;
    ps.run_lo = 3;
    ps.run_hi = N - 3;
  } else if (fam == Family::Genus2Stiefel) {
    // E2+ starts on a wall: the corner before 1 is free.
    ps.fixed[3] = gg.b;
    ps.run_lo = 4;
    ps.run_hi = N - 2;
  } else {
    ps.fixed[3] = gg.b;
    ps.fixed[N - 2] = gg.c;
    ps.run_lo = 4;
    ps.run_hi = N - 3;
  }
  std::vector<int> br;
  for (int i = 0; i < N; ++i)
    if (ps.V[i].branch) br.push_back(i);
  // Groups E- and T1 fix t and C; the last vertical group and T2 follow
  // from closure.
  std::vector<double> tgt;
  for (std::size_t j = 2; j + 2 < br.size(); ++j) {
    ps.groups.push_back({br[j], br[j + 1]});
    cplx sum = 0;
    bool vert = false;
    for (int k = br[j]; k < br[j + 1]; ++k) {
      sum += ps.V[k].side;
      vert = vert || vertical(ps.V[k].side);
    }
    tgt.push_back(vert ? sum.imag() : sum.real());
  }
  ps.target = Eigen::Map<Eigen::VectorXd>(tgt.data(), Eigen::Index(tgt.size()));
  if (int(ps.groups.size()) != ps.unknowns())
    throw std::logic_error("design: period system is not square");
  return ps;
}

// Packs prevertices (and a zero pair) into the free parameters of ps, keeping
// their relative positions inside the free run.
Eigen::VectorXd transplant(const PeriodSystem& ps, const std::vector<double>& xs,
                           const DifferentialZero* z) {
  const int k = ps.run();
  Eigen::VectorXd p(ps.unknowns());
  const double lo = xs[ps.run_lo - 1], hi = xs[ps.run_hi + 1];
  const double g0 = xs[ps.run_lo] - lo;
  for (int i = 0; i < k; ++i) p(i) = std::log((xs[ps.run_lo + i + 1] - xs[ps.run_lo + i]) / g0);
  if (ps.pair) {
    const double lo2 = ps.fixed[ps.run_lo - 1], hi2 = ps.fixed[ps.run_hi + 1];
    const double r = (hi2 - lo2) / (hi - lo);
    p(k) = lo2 + (z->re - lo) * r;
    p(k + 1) = std::log(z->im * r);
  }
  return p;
}

// Starting points: a forward solution of the same family and level with
// middle-of-the-range parameters, then evenly and unevenly spread runs.
std::vector<Eigen::VectorXd> starts(const PeriodSystem& ps, Family fam, int n, int m,
                                    int variant, double t_est) {
  const int k = ps.run();
  std::vector<Eigen::VectorXd> out;
  try {
    FamilyParams fp;
    const double H = polygon_height({polygon_of(fam), 1.0, n, m});
    const double t = t_est * n / H;
    fp.v = variant == 0 ? m + 0.5 : m - 0.5;
    fp.h1 = -0.3;
    fp.h2 = 0.3;
    fp.c = cplx(0, (m + 0.5) * t);
    const Construction con = forward_construct(fam, t, n, m, fp);
    const auto& hz = con.solution.hd.zeros;
    out.push_back(transplant(ps, con.solution.prevertices, ps.pair ? &hz.back() : nullptr));
  } catch (const std::exception&) {
  }
  for (double tilt : {0.0, -1.5, 1.5}) {
    Eigen::VectorXd p(ps.unknowns());
    for (int i = 0; i < k; ++i) p(i) = tilt * (i + 1);
    if (ps.pair) {
      std::vector<double> xs;
      DifferentialZero z;
      Eigen::VectorXd q = p;
      q(k) = 0;
      q(k + 1) = 0;
      ps.decode(q, xs, z);
      const double f1 = xs[ps.run_lo], f2 = xs[ps.run_hi];
      p(k) = 0.5 * (f1 + f2);
      p(k + 1) = std::log(0.5 * (f2 - f1));
    }
    out.push_back(p);
  }
  return out;
}

struct BudgetExceeded {};
constexpr long kEvalBudget = 1000;

struct Candidate {
  DesignAttempt attempt;
  std::optional<FilterSolution> solution;
};

cplx zeta_between(const FilterSolution& s, double x) { return s.zeta().at_real(x); }

// Recovers the polygon parameters and checks that the user band endpoints
// sit where the family puts them.
bool recover(FilterSolution& s, const PeriodSystem& ps, const Gauge& gg, int variant,
             std::string& note) {
  const auto& xs = s.prevertices;
  const double t = s.mod.t;
  const int N = int(xs.size());
  auto side = [&](int j) { return increment(s.hd, xs[j], xs[j + 1]).real(); };
  const double tol = 1e-7;
  PolygonSpec spec;
  spec.family = polygon_of(s.family);
  spec.t = t;
  spec.n = s.n;
  spec.m = s.m;
  FamilyParams& p = s.params;
  switch (s.family) {
    case Family::Genus2Stiefel:
      p.h = 1 + side(3);
      if (variant == 0) {
        if (xs[N - 2] > gg.c + tol * (1 + std::abs(gg.c))) {
          note = "E2+ starts below the free corner";
          return false;
        }
        p.v = zeta_between(s, gg.c).imag() / t;
        if (p.v > s.m + 1 + tol) {
          note = "E2+ start lies above one quantum";
          return false;
        }
        p.v = std::clamp(p.v, double(s.m), s.m + 1.0);
      } else {
        if (xs[3] < gg.b - tol * (1 + std::abs(gg.b))) {
          note = "E1+ ends past the free corner";
          return false;
        }
        p.v = zeta_between(s, gg.b).imag() / t;
        if (p.v < s.m - 1 - tol) {
          note = "E1+ end lies below one quantum";
          return false;
        }
        p.v = std::clamp(p.v, s.m - 1.0, double(s.m));
      }
      spec.h = p.h;
      break;
    case Family::Genus3TwoSlit:
      p.h1 = 1 + side(3);
      p.h2 = 1 + side(6);
      break;
    case Family::Genus3Octagon: {
      const auto& z = s.hd.zeros.back();
      p.c = -1.0 + s.zeta()(cplx(z.re, z.im));
      break;
    }
    case Family::Genus3DecagonPlus:
      p.h2 = side(5) - 1;
      p.h1 = 1 - side(7);
      break;
    case Family::Genus3DecagonMinus:
      p.h1 = 1 + side(3);
      p.h2 = -1 - side(5);
      break;
    default:
      break;
  }
  (void)ps;
  spec.h1 = p.h1;
  spec.h2 = p.h2;
  spec.c = p.c;
  try {
    spec.validate();
  } catch (const std::domain_error& e) {
    note = e.what();
    return false;
  }
  return true;
}

Candidate attempt_polygon(Family fam, int n, int m, int variant, const Gauge& gg,
                          double t_est, const BandSystem& user) {
  Candidate out;
  DesignAttempt& a = out.attempt;
  a.family = fam;
  a.m = m;
  a.variant = variant;
  a.residual = INFINITY;
  const PeriodSystem ps = make_system(fam, n, m, variant, gg);
  // Attempts at the wrong level wander for a long time; cap their work.
  long evals = 0;
  auto raw = [&](const Eigen::VectorXd& p) {
    if (++evals > kEvalBudget) throw BudgetExceeded{};
    return ps.raw(p);
  };
  auto resid = [&](const Eigen::VectorXd& p) { return Eigen::VectorXd(raw(p) - ps.target); };

  std::optional<LmResult> best;
  for (const auto& p0 : starts(ps, fam, n, m, variant, t_est)) {
    if (!ps.raw(p0).allFinite()) continue;
    try {
      LmResult r = target_homotopy(raw, p0, ps.target);
      if (r.converged) {
        LmResult pol = levenberg_marquardt(resid, r.x, {50, 1e-13, 1e-7});
        if (pol.residual < r.residual) r = pol;
      }
      if (!best || r.residual < best->residual) best = r;
    } catch (const BudgetExceeded&) {
      if (!best) a.note = "evaluation budget exhausted";
      continue;
    }
    if (best->residual < 1e-9) break;
  }
  if (!best) {
    if (a.note.empty()) a.note = "no admissible start";
    return out;
  }
  a.residual = best->residual;
  a.converged = best->residual < 1e-9;
  if (!a.converged) {
    a.note = "period equations did not converge";
    return out;
  }

  FilterSolution s;
  DifferentialZero z;
  ps.decode(best->x, s.prevertices, z);
  s.hd = ps.layout(s.prevertices, z);
  const auto sd = ps.sides(s.hd, s.prevertices);
  s.hd.scale = sd->C;
  s.family = fam;
  s.n = n;
  s.m = m;
  s.mod = modulus_from_t(sd->t);
  s.anchor = s.prevertices[1];
  s.phase = phase_shift(-1.0, s.mod);
  s.sigma = declared_sigma(fam, n);
  s.mu = (1 - s.mod.k()) / (1 + s.mod.k());
  s.chart = gg.chart;
  for (const auto& v : ps.V) s.branch.push_back(v.branch);
  s.hd.validate();
  s.prepare();
  if (!recover(s, ps, gg, variant, a.note)) return out;

  const VerificationReport rep = verify_solution(s, user);
  a.verified = rep.passed(n) && std::abs(rep.mu - s.mu) <= 1e-6 * (1 + s.mu);
  if (!a.verified) {
    a.note = "verification failed: " + std::to_string(rep.alternation_count) +
             " alternation points";
    return out;
  }
  out.solution = std::move(s);
  return out;
}

// Rectangle height t' of the genus-1 curve through -1, 0, a, 1, from the
// cross-ratio against (-1/k, -1, 1, 1/k).
double genus1_height(const Gauge& gg) {
  const double rho = (gg.a + 1) / (2 * gg.a);
  const double s = 4 * rho - 2;
  const double k = 0.5 * (s - std::sqrt(s * s - 4));
  const double kp = std::sqrt((1 - k) * (1 + k));
  return std::comp_ellint_1(kp) / std::comp_ellint_1(k);
}

// Genus 1: the curve is fixed by the four points -1, 0, a, 1 and the lacuna
// (b, c) must be a piece of the wall inside one quantum.
Candidate attempt_genus1(int n, const Gauge& gg, const BandSystem& user) {
  Candidate out;
  DesignAttempt& a = out.attempt;
  a.family = Family::Genus1Zolotarev;
  a.residual = INFINITY;
  const double t = genus1_height(gg) / n;
  if (!(t > 0) || !std::isfinite(t)) {
    a.note = "degenerate curve";
    return out;
  }
  const ZolotarevFraction zf = make_zolotarev(n, t);
  const double kb = zf.mod_big.kinv;
  const Mobius to_raw = Mobius::three_point({-1.0, 0.0, 1.0}, {-kb, -1.0, kb});
  a.residual = std::abs(to_raw(gg.a) - 1);
  auto height = [&](double x) {
    return inverse_x(cplx(to_raw(x), 0.0), zf.mod_big).imag() / t;
  };
  double v1 = height(gg.b), v2 = height(gg.c);
  const double tol = 1e-7;
  const int m = int(std::floor(v1 + tol));
  a.m = m;
  if (v2 > m + 1 + tol) {
    a.note = "lacuna spans more than one quantum";
    return out;
  }
  v1 = std::max(v1, double(m));
  v2 = std::min(v2, m + 1.0);
  a.converged = true;
  try {
    FamilyParams p;
    p.v1 = v1;
    p.v2 = v2;
    Construction con = forward_construct(Family::Genus1Zolotarev, t, n, m, p);
    FilterSolution& sol = con.solution;
    sol.chart = Mobius::three_point({user.eminus.lo, user.eminus.hi, user.e2plus.hi},
                                    {-kb, -1.0, kb});
    const VerificationReport rep = verify_solution(sol, user);
    a.verified = rep.passed(n) && std::abs(rep.mu - sol.mu) <= 1e-6 * (1 + sol.mu);
    if (!a.verified) {
      a.note = "verification failed";
      return out;
    }
    out.solution = std::move(sol);
  } catch (const std::exception& e) {
    a.note = e.what();
  }
  return out;
}

std::pair<int, int> level_range(Family f, int n) {
  switch (f) {
    case Family::Genus2Stiefel: return {1, n - 1};
    case Family::Genus3TwoSlit:
    case Family::Genus3Octagon: return {1, n - 2};
    case Family::Genus3DecagonPlus: return {1, n - 2};
    case Family::Genus3DecagonMinus: return {0, n - 3};
    default: return {0, -1};
  }
}

}  // namespace

DesignResult design_with_report(const BandSystem& bands, int n, const Sigma& sigma,
                                const DesignOptions& opt) {
  const std::vector<Family> families = classify(bands, n, sigma);
  const Gauge gg = make_gauge(bands);
  const double t_est = genus1_height(gg) / n;

  struct Task {
    Family family;
    int m;
    int variant;
  };
  std::vector<Task> tasks;
  for (Family f : families) {
    if (f == Family::Genus1Zolotarev) {
      tasks.push_back({f, 0, 0});
      continue;
    }
    const auto [lo, hi] = level_range(f, n);
    for (int variant = 0; variant < (f == Family::Genus2Stiefel ? 2 : 1); ++variant)
      for (int m = lo; m <= hi; ++m) tasks.push_back({f, m, variant});
  }

  std::vector<Candidate> results(tasks.size());
  // Lowest verified task index; later tasks cannot win and are skipped.
  std::atomic<std::size_t> first_win{tasks.size()};
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& tk = tasks[i];
    if (!opt.exhaustive && i > first_win.load()) {
      results[i].attempt = {tk.family, tk.m, tk.variant, INFINITY, false, false, 0,
                            "skipped: an earlier candidate verified"};
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[i] = tk.family == Family::Genus1Zolotarev
                       ? attempt_genus1(n, gg, bands)
                       : attempt_polygon(tk.family, n, tk.m, tk.variant, gg, t_est, bands);
    } catch (const std::exception& e) {
      results[i].attempt = {tk.family, tk.m, tk.variant, INFINITY, false, false, 0, e.what()};
    }
    results[i].attempt.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (results[i].solution) {
      std::size_t cur = first_win.load();
      while (i < cur && !first_win.compare_exchange_weak(cur, i)) {
      }
    }
  }

  DesignResult out;
  std::optional<std::size_t> winner;
  for (std::size_t i = 0; i < results.size(); ++i) {
    out.attempts.push_back(results[i].attempt);
    if (!results[i].solution) continue;
    if (!winner) winner = i;
    const Family f = results[i].attempt.family;
    if (std::find(out.verified_families.begin(), out.verified_families.end(), f) ==
        out.verified_families.end())
      out.verified_families.push_back(f);
  }
  if (!winner) {
    std::map<Family, double> best;
    for (const auto& a : out.attempts) {
      auto it = best.find(a.family);
      if (it == best.end() || a.residual < it->second) best[a.family] = a.residual;
    }
    std::vector<std::pair<std::string, double>> list;
    for (Family f : families) list.push_back({to_string(f), best.count(f) ? best[f] : INFINITY});
    throw NoSolutionFound("design: no family converged and verified", list);
  }
  out.solution = *results[*winner].solution;
  return out;
}

FilterSolution design(const BandSystem& bands, int n, const Sigma& sigma) {
  return design_with_report(bands, n, sigma).solution;
}

}  // namespace bandapprox
