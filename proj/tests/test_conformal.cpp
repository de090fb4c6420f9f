#include <gtest/gtest.h>

#include <cmath>

#include "bandapprox/conformal.hpp"
#include "bandapprox/elliptic.hpp"

using namespace bandapprox;

namespace {

HyperellipticData genus1(double kb) {
  HyperellipticData hd;
  hd.branchpoints = {-kb, -1, 1, kb};
  return hd;
}

double cross_ratio(double a, double b, double c, double d) {
  return (c - a) * (d - b) / ((c - b) * (d - a));
}

std::vector<Interval> consecutive(const std::vector<double>& e) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) out.push_back({e[i], e[i + 1]});
  return out;
}

PolygonSpec slit_spec() {
  PolygonSpec s;
  s.family = PolygonFamily::SlitRect;
  s.t = 0.4;
  s.n = 3;
  s.m = 1;
  s.h = 0.2;
  return s;
}

}  // namespace

// Upper-side boundary values: x -> -x lands on the lower side, hence the
// conjugate.
TEST(Differential, ReflectsForSymmetricCurve) {
  const auto hd = genus1(1.7);
  for (double x : {0.2, 0.7, 1.3, 2.5})
    EXPECT_LT(std::abs(differential_at(hd, -x) - std::conj(differential_at(hd, x))), 1e-14);
}

TEST(Differential, SheetsAndBranchpoints) {
  const auto hd = genus1(1.7);
  EXPECT_LT(std::abs(differential_at(hd, 0.3, 1) + differential_at(hd, 0.3, -1)), 1e-15);
  // Real inside a band, imaginary across the next branchpoint.
  EXPECT_EQ(differential_at(hd, 0.3).imag(), 0.0);
  EXPECT_EQ(differential_at(hd, 1.3).real(), 0.0);
  EXPECT_THROW(differential_at(hd, 1.0), std::domain_error);
}

TEST(Differential, VanishesAtNumeratorZero) {
  HyperellipticData hd;
  hd.branchpoints = {-3, -2, -1, 1, 2, 3};
  hd.zeros = {{0.5, 0}};
  hd.validate();
  EXPECT_EQ(std::abs(differential_at(hd, 0.5)), 0.0);
  EXPECT_GT(std::abs(differential_at(hd, 0.4)), 0.0);
}

TEST(Differential, ValidationRejectsBadCurves) {
  HyperellipticData hd;
  hd.branchpoints = {-1, 0, 1};
  EXPECT_THROW(hd.validate(), std::invalid_argument);
  hd.branchpoints = {-3, -2, -1, 1, 2, 3};  // genus 2 needs one zero
  EXPECT_THROW(hd.validate(), std::invalid_argument);
}

TEST(Periods, CompleteIntegral) {
  const double kb = 1.9, k = 1 / kb;
  const auto hd = genus1(kb);
  EXPECT_NEAR(segment_integral(hd, -1, 1), 2 * std::comp_ellint_1(k) / kb, 1e-12);
  const double kp = std::sqrt(1 - k * k);
  // The gap period over the band period is K(k') / (2 K(k)).
  const auto p = period_vector(hd, {{-1, 1}, {1, kb}});
  EXPECT_NEAR(std::abs(p[1]) / std::abs(p[0]), std::comp_ellint_1(kp) / (2 * std::comp_ellint_1(k)), 1e-12);
  EXPECT_NEAR(p[0].imag(), 0.0, 1e-15);
  EXPECT_NEAR(p[1].real(), 0.0, 1e-15);
}

TEST(Periods, Additivity) {
  const auto hd = genus1(2.2);
  EXPECT_NEAR(segment_integral(hd, -1, 0.3) + segment_integral(hd, 0.3, 1), segment_integral(hd, -1, 1), 1e-13);
  EXPECT_THROW(segment_integral(hd, 0, 1.5), std::domain_error);
}

TEST(Periods, ClosureAroundTheRealLine) {
  HyperellipticData hd;
  hd.branchpoints = {-2.5, -1, -0.2, 0.4, 1.1, 3};
  hd.zeros = {{0.1, 0}};
  auto iv = consecutive(hd.branchpoints);
  iv.push_back({3, -2.5});  // through infinity
  const auto p = period_vector(hd, iv);
  cplx sum = 0;
  double scale = 0;
  for (const cplx v : p) {
    sum += v;
    scale += std::abs(v);
  }
  EXPECT_LT(std::abs(sum), 1e-9 * scale);
  // Permuting the request permutes the answer.
  const auto q = period_vector(hd, {iv[2], iv[0]});
  EXPECT_EQ(q[0], p[2]);
  EXPECT_EQ(q[1], p[0]);
}

TEST(Periods, MobiusGaugeInvariance) {
  const auto sc = sc_solve_forward(slit_spec());
  const Mobius M{2, 0.3, 0.1, 1};
  HyperellipticData moved = sc.hd;
  for (double& e : moved.branchpoints) e = M(e);
  for (auto& z : moved.zeros) z.re = M(z.re);
  moved.scale = 1;
  const auto a = period_vector(sc.hd, consecutive(sc.hd.branchpoints));
  const auto b = period_vector(moved, consecutive(moved.branchpoints));
  for (std::size_t i = 1; i < a.size(); ++i)
    EXPECT_NEAR(std::abs(a[i] / a[0]), std::abs(b[i] / b[0]), 1e-9);
}

TEST(ScForward, RectangleMatchesEllipticModulus) {
  PolygonSpec s;
  s.family = PolygonFamily::Rect;
  s.t = 0.6;
  s.n = 1;
  const auto sc = sc_solve_forward(s);
  ASSERT_EQ(sc.hd.branchpoints.size(), 4u);
  EXPECT_TRUE(sc.hd.zeros.empty());
  EXPECT_LT(sc.residual, 1e-8);
  // Prevertices are a Moebius image of (-kinv, -1, 1, kinv).
  const double kinv = modulus_from_t(s.t).kinv;
  const auto& e = sc.hd.branchpoints;
  EXPECT_NEAR(cross_ratio(e[0], e[1], e[2], e[3]), cross_ratio(-kinv, -1, 1, kinv), 1e-8);
}

TEST(ScForward, SlitRectangle) {
  const auto spec = slit_spec();
  const auto sc = sc_solve_forward(spec);
  ASSERT_EQ(sc.hd.branchpoints.size(), 6u);
  ASSERT_EQ(sc.hd.zeros.size(), 1u);
  EXPECT_EQ(sc.hd.zeros[0].im, 0.0);
  EXPECT_LT(sc.residual, 1e-8);
  EXPECT_LT(side_residual(spec, sc), 1e-8);
  // The slit tip sits between the two bank prevertices.
  const auto tmpl = polygon_template(spec);
  for (std::size_t i = 0; i < tmpl.size(); ++i)
    if (!tmpl[i].branch) {
      EXPECT_EQ(sc.prevertices[i], sc.hd.zeros[0].re);
      EXPECT_NEAR(std::abs(tmpl[i - 1].side), 1 - spec.h, 1e-15);
      EXPECT_NEAR(std::abs(tmpl[i].side), 1 - spec.h, 1e-15);
    }
}

TEST(ScForward, OctagonHasConjugatePair) {
  PolygonSpec s;
  s.family = PolygonFamily::BranchedOctagon;
  s.t = 0.5;
  s.n = 4;
  s.m = 1;
  s.c = {0.2, 0.9};
  const auto sc = sc_solve_forward(s);
  ASSERT_EQ(sc.hd.zeros.size(), 1u);
  EXPECT_GT(sc.hd.zeros[0].im, 0.0);
  EXPECT_EQ(sc.hd.branchpoints.size(), 8u);
  EXPECT_LT(sc.residual, 1e-8);
}

TEST(ScForward, RejectsInvalidSpecs) {
  PolygonSpec s = slit_spec();
  s.m = 3;
  EXPECT_THROW(s.validate(), std::domain_error);
  s = slit_spec();
  s.h = 1.0;
  EXPECT_THROW(s.validate(), std::domain_error);
  s.family = PolygonFamily::DecagonPlus;
  s.h = 0;
  s.h1 = 0.4;
  s.h2 = 0.1;
  s.m = 1;
  s.n = 4;
  EXPECT_THROW(s.validate(), std::domain_error);
}

TEST(MapToPolygon, AnchorAndSides) {
  const auto spec = slit_spec();
  const auto sc = sc_solve_forward(spec);
  const double anchor = sc.prevertices[1];
  EXPECT_EQ(std::abs(map_to_polygon(sc.hd, anchor, anchor)), 0.0);
  // The stopband (v0, v1) maps to the left wall of height n t.
  const cplx top = map_to_polygon(sc.hd, sc.prevertices[0], anchor);
  EXPECT_NEAR(top.real(), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(top.imag()), spec.n * spec.t, 1e-8);
  // Interior points land inside the rectangle.
  for (const cplx z : {cplx(0.1, 0.3), cplx(-0.5, 1.0), cplx(2.0, 0.01)}) {
    const cplx w = map_to_polygon(sc.hd, z, anchor) - cplx(1, 0);
    EXPECT_GT(w.real(), -1 - 1e-12) << z;
    EXPECT_LT(w.real(), 1 + 1e-12) << z;
    EXPECT_GT(w.imag(), -1e-12) << z;
    EXPECT_LT(w.imag(), spec.n * spec.t + 1e-12) << z;
  }
}

TEST(ZetaTable, AgreesWithDirectMap) {
  const auto sc = sc_solve_forward(slit_spec());
  const ZetaTable zt(sc.hd, sc.prevertices[1]);
  for (const cplx z : {cplx(0.3, 0.0), cplx(-0.7, 0.2), cplx(1.5, 0.4)})
    EXPECT_LT(std::abs(zt(z) - map_to_polygon(sc.hd, z, sc.prevertices[1])), 1e-10);
}
