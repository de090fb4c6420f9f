#include <gtest/gtest.h>

#include <cmath>

#include "bandapprox/verify.hpp"
#include "bandapprox/zolotarev.hpp"
#include "fixtures.hpp"

using namespace bandapprox;
using fixtures::construction;

namespace {

struct TwoBand {
  ZolotarevFraction zf;
  Rescaling rs;
  std::vector<Band> bands;
  RealFn R;
};

TwoBand two_band(int n, double t) {
  TwoBand z{make_zolotarev(n, t), {}, {}, {}};
  z.rs = rescaled_solution(z.zf);
  const auto [em, ep] = zolotarev_bands(z.zf);
  z.bands = {{em, -1}, {ep, 1}};
  z.R = [zf = z.zf, s = z.rs.scale](double x) { return s * eval_Z(zf, x).real(); };
  return z;
}

}  // namespace

TEST(SupError, ZeroFunction) {
  const auto z = two_band(3, 0.5);
  EXPECT_EQ(sup_error([](double) { return 0.0; }, z.bands), 1.0);
}

TEST(SupError, Zolotarev) {
  for (auto [n, t] : {std::pair{2, 0.6}, {3, 0.4}, {5, 0.3}}) {
    const auto z = two_band(n, t);
    const double mu = sup_error(z.R, z.bands);
    EXPECT_NEAR(mu, z.rs.mu, 1e-8);
    EXPECT_NEAR(sup_error(z.R, z.bands, 512), mu, 1e-10);
  }
}

TEST(SupError, PoleOnBandIsInfinite) {
  const std::vector<Band> b = {{{-1, 1}, 1}};
  EXPECT_TRUE(std::isinf(sup_error([](double x) { return 1 / x; }, b)));
}

TEST(Alternation, ZolotarevHasTwoNPlusTwo) {
  for (int n : {2, 3, 5}) {
    const auto z = two_band(n, 0.4);
    const auto alt = alternation_points(z.R, z.bands, z.rs.mu);
    EXPECT_EQ(alt.count(), 2 * n + 2);
    EXPECT_TRUE(alt.alternating);
    for (int i = 1; i < alt.count(); ++i) {
      EXPECT_LT(alt.points[i - 1], alt.points[i]);
      EXPECT_EQ(alt.signs[i], -alt.signs[i - 1]);
    }
    // n + 1 touches per band.
    int left = 0;
    for (double x : alt.points) left += x < 0;
    EXPECT_EQ(left, n + 1);
  }
}

TEST(Alternation, SingleTouchDoesNotAlternate) {
  const std::vector<Band> b = {{{-1, -0.5}, -1}, {{0.5, 1}, 1}};
  const RealFn R = [](double x) { return x + 0.5; };
  const auto alt = alternation_points(R, b, sup_error(R, b));
  EXPECT_EQ(alt.count(), 1);
  EXPECT_FALSE(alt.alternating);
}

TEST(Alternation, ConstantIsDegenerate) {
  const auto z = two_band(3, 0.4);
  const RealFn c = [](double) { return 0.5; };
  const auto alt = alternation_points(c, z.bands, sup_error(c, z.bands));
  EXPECT_LE(alt.count(), 2);
}

TEST(TopologicalClass, FamiliesAndParity) {
  for (Family f : fixtures::all_families()) {
    const auto& c = construction(f);
    const auto rep = verify_solution(c.solution, c.bands);
    EXPECT_TRUE(rep.sigma_defined);
    EXPECT_EQ(rep.sigma, declared_sigma(f, c.solution.n)) << to_string(f);
    EXPECT_EQ((rep.sigma[0] + rep.sigma[1] + rep.sigma[2]) % 2, c.solution.n % 2);
  }
}

TEST(TopologicalClass, UndefinedAboveUnitDeviation) {
  RationalFunction r;
  r.num = {0, 3};
  const BandSystem b{{-1, 0}, {0.2, 0.4}, {0.6, 1}};
  EXPECT_THROW(topological_class(r, b), std::domain_error);
}

TEST(Extremality, Zolotarev) {
  const auto zf = make_zolotarev(3, 0.4);
  EXPECT_EQ(extremality_number(as_rational(zf), zf.mod_small), 1);
}

TEST(Extremality, Genus2AndTwoSlit) {
  for (Family f : {Family::Genus2Stiefel, Family::Genus3TwoSlit}) {
    const auto& c = construction(f);
    EXPECT_EQ(verify_solution(c.solution, c.bands).extremality, family_genus(f));
  }
}

TEST(ExtendedBands, SegmentCountsFollowTheGenus) {
  const int expected[] = {0, 2, 3, 4};
  for (Family f : fixtures::all_families()) {
    const auto& c = construction(f);
    const auto rep = verify_solution(c.solution, c.bands);
    EXPECT_EQ(int(rep.extended_segments.size()), expected[family_genus(f)]) << to_string(f);
    // E# contains E.
    for (const auto& band : c.bands.bands()) {
      bool covered = false;
      for (const auto& iv : rep.extended_segments)
        covered |= iv.lo <= band.span.lo + 1e-12 && iv.hi >= band.span.hi - 1e-12;
      EXPECT_TRUE(covered) << to_string(f);
    }
  }
}

TEST(ExtendedBands, Genus1FillsTheLacuna) {
  const auto& c = construction(Family::Genus1Zolotarev);
  const auto rep = verify_solution(c.solution, c.bands);
  ASSERT_EQ(rep.extended_segments.size(), 2u);
  EXPECT_NEAR(rep.extended_segments[1].lo, c.bands.e1plus.lo, 1e-12);
  EXPECT_NEAR(rep.extended_segments[1].hi, c.bands.e2plus.hi, 1e-9);
}

TEST(Theorem1, Check) {
  const BandSystem b{{-1, 0}, {0.2, 0.4}, {0.6, 1}};
  std::vector<Interval> same = {b.eminus, b.e1plus, b.e2plus};
  EXPECT_TRUE(check_theorem1(same, b));
  std::vector<Interval> lacuna = {b.eminus, b.e1plus, {0.45, 0.5}, b.e2plus};
  EXPECT_TRUE(check_theorem1(lacuna, b));
  std::vector<Interval> ripple_t1 = {b.eminus, {0.05, 0.1}, b.e1plus, b.e2plus};
  EXPECT_FALSE(check_theorem1(ripple_t1, b));
  std::vector<Interval> two_in_lacuna = {b.eminus, b.e1plus, {0.42, 0.44}, {0.5, 0.55}, b.e2plus};
  EXPECT_FALSE(check_theorem1(two_in_lacuna, b));
  std::vector<Interval> grown_t2 = {{-1.2, 0}, b.e1plus, b.e2plus};
  EXPECT_FALSE(check_theorem1(grown_t2, b));
}

TEST(RationalFit, ExactRecovery) {
  // (x^2 - 0.3) / (x^2 + 0.5 x + 2) sampled away from its poles.
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 40; ++i) {
    const double x = -3 + 6.0 * i / 39;
    s.push_back({x, (x * x - 0.3) / (x * x + 0.5 * x + 2)});
  }
  EXPECT_LT(rational_fit(s, 2).residual, 1e-9);
}

TEST(RationalFit, DegreeTooLow) {
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 40; ++i) {
    const double x = -2 + 4.0 * i / 39;
    s.push_back({x, x * x * x / (1 + x * x / 9)});
  }
  EXPECT_GT(rational_fit(s, 2).residual, 1e-4);
}

TEST(RationalFit, ZolotarevSamples) {
  const auto zf = make_zolotarev(4, 0.4);
  std::vector<std::pair<double, double>> s;
  for (int i = 0; i < 4 * 4 + 8; ++i) {
    const double x = -zf.mod_big.kinv + 2 * zf.mod_big.kinv * (i + 0.5) / 24;
    s.push_back({x, eval_Z(zf, x).real()});
  }
  EXPECT_LT(rational_fit(s, 4).residual, 1e-7);
}
