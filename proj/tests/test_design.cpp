#include <gtest/gtest.h>

#include <cmath>

#include "bandapprox/design.hpp"
#include "bandapprox/verify.hpp"
#include "bandapprox/errors.hpp"
#include "fixtures.hpp"

using namespace bandapprox;

namespace {

// Bands moved by a Moebius map, so that the normalization is exercised.
BandSystem scrambled(const BandSystem& b) {
  const Mobius M{2.0, 0.3, 0.1, 1.0};
  return {{M(b.eminus.lo), M(b.eminus.hi)}, {M(b.e1plus.lo), M(b.e1plus.hi)}, {M(b.e2plus.lo), M(b.e2plus.hi)}};
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST(Design, Genus2Roundtrip) {
  FamilyParams p;
  p.h = 0.3;
  p.v = 2;
  const auto c = forward_construct(Family::Genus2Stiefel, 0.4, 5, 2, p);
  const auto r = design_with_report(scrambled(c.bands), 5, c.solution.sigma);
  const auto& s = r.solution;
  EXPECT_EQ(s.family, Family::Genus2Stiefel);
  EXPECT_EQ(s.m, 2);
  EXPECT_LT(rel(s.mod.t, 0.4), 1e-6);
  EXPECT_LT(rel(s.params.h, 0.3), 1e-6);
  EXPECT_LT(rel(s.params.v, 2.0), 1e-6);
}

TEST(Design, Genus2WallInsidePassband) {
  FamilyParams p;
  p.h = -0.4;
  p.v = 1.6;
  const auto c = forward_construct(Family::Genus2Stiefel, 0.5, 4, 2, p);
  const auto s = design(c.bands, 4, c.solution.sigma);
  EXPECT_EQ(s.family, Family::Genus2Stiefel);
  EXPECT_LT(rel(s.params.h, -0.4), 1e-6);
  EXPECT_LT(rel(s.params.v, 1.6), 1e-6);
}

TEST(Design, TwoSlitRoundtrip) {
  const auto& c = fixtures::construction(Family::Genus3TwoSlit);
  const auto s = design(scrambled(c.bands), c.solution.n, c.solution.sigma);
  EXPECT_EQ(s.family, Family::Genus3TwoSlit);
  EXPECT_LT(rel(s.mod.t, 0.6), 1e-6);
  EXPECT_LT(std::abs(s.params.h1 - 0.0), 1e-6);
  EXPECT_LT(rel(s.params.h2, 0.3), 1e-6);
}

TEST(Design, OctagonRecoversConjugatePair) {
  const auto& c = fixtures::construction(Family::Genus3Octagon);
  const auto s = design(c.bands, c.solution.n, c.solution.sigma);
  EXPECT_EQ(s.family, Family::Genus3Octagon);
  EXPECT_LT(std::abs(s.params.c - cplx(0.2, 0.9)), 1e-5);
}

TEST(Design, ZolotarevConfigurationSelectsGenus1) {
  const auto& c = fixtures::construction(Family::Genus1Zolotarev);
  const auto s = design(c.bands, c.solution.n, c.solution.sigma);
  EXPECT_EQ(s.family, Family::Genus1Zolotarev);
  EXPECT_LT(rel(s.mod.t, 0.4), 1e-6);
  EXPECT_LT(rel(s.params.v1, 1.3), 1e-6);
  EXPECT_LT(rel(s.params.v2, 1.7), 1e-6);
}

TEST(Design, ReportListsAttempts) {
  const auto& c = fixtures::construction(Family::Genus2Stiefel);
  const auto r = design_with_report(c.bands, c.solution.n, c.solution.sigma);
  ASSERT_FALSE(r.attempts.empty());
  ASSERT_FALSE(r.verified_families.empty());
  EXPECT_EQ(r.verified_families.front(), r.solution.family);
  bool winner = false;
  for (const auto& a : r.attempts) winner |= a.verified && a.family == r.solution.family && a.m == r.solution.m;
  EXPECT_TRUE(winner);
}

TEST(Design, ParityMismatchIsRejected) {
  const auto& c = fixtures::construction(Family::Genus2Stiefel);
  EXPECT_THROW(design(c.bands, 5, {1, 1, 0}), std::domain_error);
}

// A single Moebius map equioscillates across the whole hull of the passbands.
TEST(Design, DegreeOneFillsTheLacuna) {
  const BandSystem b{{-1, 0}, {0.2, 0.4}, {0.6, 1}};
  const FilterSolution s = design(b, 1, {1, 0, 0});
  EXPECT_EQ(s.family, Family::Genus1Zolotarev);
  EXPECT_EQ(verify_solution(s, b).alternation_count, 4);
}

TEST(Design, UncoveredClassHasNoSolution) {
  const BandSystem b{{-1, 0}, {0.2, 0.4}, {0.6, 1}};
  try {
    design(b, 1, {0, 0, 1});
    FAIL() << "expected NoSolutionFound";
  } catch (const NoSolutionFound&) {
    SUCCEED();
  }
}
