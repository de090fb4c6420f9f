#include <gtest/gtest.h>

#include "bandapprox/simplex.hpp"

using namespace bandapprox;

TEST(Simplex, Textbook) {
  // max x + y subject to 2x + y <= 4, x + 2y <= 4, written as a minimum with
  // slacks; optimum (4/3, 4/3).
  Eigen::MatrixXd A(2, 4);
  A << 2, 1, 1, 0, 1, 2, 0, 1;
  Eigen::VectorXd b(2), c(4);
  b << 4, 4;
  c << -1, -1, 0, 0;
  const auto s = simplex_standard(A, b, c);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.x(0), 4.0 / 3, 1e-12);
  EXPECT_NEAR(s.x(1), 4.0 / 3, 1e-12);
  EXPECT_NEAR(s.objective, -8.0 / 3, 1e-12);
  // Complementary slackness: A'y <= c with equality on the basis.
  const Eigen::VectorXd red = c - A.transpose() * s.duals;
  for (int j = 0; j < 4; ++j) {
    EXPECT_GE(red(j), -1e-12);
    if (s.x(j) > 1e-12) EXPECT_NEAR(red(j), 0.0, 1e-12);
  }
}

TEST(Simplex, Infeasible) {
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 1, 1;
  Eigen::VectorXd b(2), c(2);
  b << 1, 2;
  c << 1, 1;
  EXPECT_EQ(simplex_standard(A, b, c).status, LpStatus::Infeasible);
}

TEST(Simplex, Unbounded) {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1), c(2);
  b << 1;
  c << -1, 0;
  EXPECT_EQ(simplex_standard(A, b, c).status, LpStatus::Unbounded);
}

TEST(Simplex, NegativeRightHandSide) {
  // -x - y = -2, minimize x + 3y: x = 2.
  Eigen::MatrixXd A(1, 2);
  A << -1, -1;
  Eigen::VectorXd b(1), c(2);
  b << -2;
  c << 1, 3;
  const auto s = simplex_standard(A, b, c);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.x(0), 2, 1e-14);
  EXPECT_NEAR(s.duals(0), -1, 1e-14);
}

TEST(Simplex, BlandAvoidsCyclingOnBeale) {
  Eigen::MatrixXd A(3, 7);
  A << 1, 0, 0, 0.25, -60, -1.0 / 25, 9,  //
      0, 1, 0, 0.5, -90, -1.0 / 50, 3,     //
      0, 0, 1, 0, 0, 1, 0;
  Eigen::VectorXd b(3), c(7);
  b << 0, 0, 1;
  c << 0, 0, 0, -0.75, 150, -1.0 / 50, 6;
  const auto s = simplex_standard(A, b, c, 1000);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.objective, -0.05, 1e-12);
}

TEST(Simplex, IterationLimit) {
  Eigen::MatrixXd A(2, 4);
  A << 2, 1, 1, 0, 1, 2, 0, 1;
  Eigen::VectorXd b(2), c(4);
  b << 4, 4;
  c << -1, -1, 0, 0;
  EXPECT_EQ(simplex_standard(A, b, c, 1).status, LpStatus::IterationLimit);
}

TEST(SolveInequality, SmallProblem) {
  // min -x - y, x + 2y <= 4, 3x + y <= 6, -x <= 0, -y <= 0: (1.6, 1.2).
  Eigen::MatrixXd G(4, 2);
  G << 1, 2, 3, 1, -1, 0, 0, -1;
  Eigen::VectorXd h(4), c(2);
  h << 4, 6, 0, 0;
  c << -1, -1;
  const auto s = solve_inequality(G, h, c);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.x(0), 1.6, 1e-12);
  EXPECT_NEAR(s.x(1), 1.2, 1e-12);
  EXPECT_NEAR(s.objective, -2.8, 1e-12);
}

TEST(SolveInequality, StatusTranslation) {
  Eigen::MatrixXd G(2, 1);
  G << 1, -1;
  Eigen::VectorXd h(2), c(1);
  h << -1, -1;  // x <= -1 and x >= 1
  c << 1;
  EXPECT_EQ(solve_inequality(G, h, c).status, LpStatus::Infeasible);
  Eigen::MatrixXd G1(1, 1);
  G1 << 1;
  Eigen::VectorXd h1(1);
  h1 << 0;
  EXPECT_EQ(solve_inequality(G1, h1, c).status, LpStatus::Unbounded);
}
