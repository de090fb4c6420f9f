#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "bandapprox/verify.hpp"
#include "fixtures.hpp"

using namespace bandapprox;
using fixtures::construction;

class ForwardFamily : public ::testing::TestWithParam<Family> {};

TEST_P(ForwardFamily, CertifiesAsOptimal) {
  const Family f = GetParam();
  const auto& c = construction(f);
  const FilterSolution& s = c.solution;
  EXPECT_EQ(s.hd.genus(), family_genus(f));
  EXPECT_EQ(s.sigma, declared_sigma(f, s.n));
  EXPECT_EQ((s.sigma[0] + s.sigma[1] + s.sigma[2]) % 2, s.n % 2);
  const auto rep = verify_solution(s, c.bands);
  EXPECT_EQ(rep.alternation_count, 2 * s.n + 2);
  EXPECT_TRUE(rep.alternating);
  EXPECT_NEAR(rep.mu, s.mu, 1e-8);
  EXPECT_EQ(rep.sigma, s.sigma);
  EXPECT_EQ(rep.extremality, family_genus(f));
  EXPECT_TRUE(rep.theorem1_ok);
  EXPECT_LT(rep.degree_fit_residual, 1e-7);
}

TEST_P(ForwardFamily, AnchorValueAndSymmetry) {
  const auto& s = construction(GetParam()).solution;
  EXPECT_NEAR(eval_solution(s, s.anchor), -1.0, 1e-10);
  FilterSolution flipped = s;
  flipped.phase = phase_shift(1.0, s.mod);
  const auto& b = construction(GetParam()).bands;
  for (double x : {b.eminus.mid(), b.e1plus.mid(), b.e2plus.mid()})
    EXPECT_NEAR(eval_solution(flipped, x), -eval_solution(s, x), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, ForwardFamily, ::testing::ValuesIn(fixtures::all_families()),
                         [](const auto& info) { return to_string(info.param); });

TEST(Forward, Genus2WallSplitAtTheSlitQuantum) {
  // v = m: E2+ starts exactly at the slit-end prevertex.
  const auto& c = construction(Family::Genus2Stiefel);
  const auto& xs = c.solution.prevertices;
  EXPECT_EQ(c.bands.e2plus.lo, xs[xs.size() - 2]);
  EXPECT_EQ(c.bands.e1plus.hi, xs[3]);
}

TEST(Forward, Genus2SlitTipIsExceptional) {
  const auto& s = construction(Family::Genus2Stiefel).solution;
  ASSERT_EQ(s.hd.zeros.size(), 1u);
  const double v = std::abs(eval_solution(s, s.hd.zeros[0].re));
  EXPECT_GT(std::abs(v - 1), 1e-3);
  EXPECT_GT(std::abs(v - s.mod.kinv), 1e-3);
}

TEST(Forward, TwoSlitHasFakeBandInLacuna) {
  const auto& c = construction(Family::Genus3TwoSlit);
  const auto rep = verify_solution(c.solution, c.bands);
  const Interval gap = c.bands.t12();
  int inside = 0;
  for (const auto& iv : rep.extended_segments)
    if (iv.lo > gap.lo && iv.hi < gap.hi) ++inside;
  EXPECT_EQ(inside, 1);
}

TEST(Forward, RejectsBadParameters) {
  FamilyParams p;
  p.h = 0.3;
  p.v = 0.5;  // not within [m-1, m+1]
  EXPECT_THROW(forward_construct(Family::Genus2Stiefel, 0.4, 5, 3, p), std::domain_error);
  p.v = 1;
  EXPECT_THROW(forward_construct(Family::Genus2Stiefel, 0.4, 1, 1, p), std::domain_error);
  FamilyParams q;
  q.v1 = q.v2 = 1.5;
  EXPECT_THROW(forward_construct(Family::Genus1Zolotarev, 0.4, 4, 1, q), std::domain_error);
}

TEST(PhaseShift, Table) {
  const auto mod = modulus_from_t(0.7);
  EXPECT_EQ(phase_shift(1.0, mod), cplx(1.0));
  EXPECT_EQ(phase_shift(-1.0, mod), cplx(-1.0));
  EXPECT_EQ(phase_shift(mod.kinv, mod), cplx(1, 0.7));
  EXPECT_EQ(phase_shift(-mod.kinv, mod), cplx(-1, 0.7));
  EXPECT_THROW(phase_shift(0.5, mod), std::domain_error);
}

TEST(Classify, ByClass) {
  const auto& b = construction(Family::Genus2Stiefel).bands;
  const auto even = classify(b, 5, {1, 0, 0});
  ASSERT_FALSE(even.empty());
  EXPECT_EQ(even.front(), Family::Genus2Stiefel);
  EXPECT_EQ(std::set<Family>(even.begin(), even.end()),
            (std::set<Family>{Family::Genus1Zolotarev, Family::Genus2Stiefel, Family::Genus3TwoSlit}));
  const auto odd = classify(b, 5, {1, 1, 1});
  EXPECT_EQ(std::set<Family>(odd.begin(), odd.end()),
            (std::set<Family>{Family::Genus3Octagon, Family::Genus3DecagonPlus, Family::Genus3DecagonMinus}));
  EXPECT_THROW(classify(b, 5, {1, 1, 0}), std::domain_error);
}

TEST(Families, Names) {
  for (Family f : fixtures::all_families()) EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_THROW(family_from_string("Genus4"), std::invalid_argument);
}
