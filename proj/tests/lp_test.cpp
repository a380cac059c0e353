#include <gtest/gtest.h>

#include "rrsp/lp.hpp"

namespace rrsp {
namespace {

TEST(Lp, SingleUpperBound) {
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto t = lp.add_variable(std::nullopt, std::nullopt, Rational(1));
  lp.add_constraint({{t, Rational(1)}}, Relation::kLessEqual, Rational(1));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.point[t], 1);
}

TEST(Lp, BoxWithBudget) {
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto d1 = lp.add_variable(Rational(0), Rational(1), Rational(1));
  const auto d2 = lp.add_variable(Rational(0), Rational(1), Rational(1));
  lp.add_constraint({{d1, Rational(1)}, {d2, Rational(1)}}, Relation::kLessEqual, Rational(1));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(r.point[d1] + r.point[d2], 1);
}

// max t s.t. t <= sum of the deviations on each of three disjoint chains of
// 7 arcs, deviations in [0, 2], total budget 1.
TEST(Lp, ThreeChainAdversary) {
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto t = lp.add_variable(std::nullopt, std::nullopt, Rational(1));
  std::vector<std::pair<std::size_t, Rational>> budget;
  for (int chain = 0; chain < 3; ++chain) {
    std::vector<std::pair<std::size_t, Rational>> row = {{t, Rational(1)}};
    for (int arc = 0; arc < 7; ++arc) {
      const auto d = lp.add_variable(Rational(0), Rational(2), Rational(0));
      row.push_back({d, Rational(-1)});
      budget.push_back({d, Rational(1)});
    }
    lp.add_constraint(row, Relation::kLessEqual, Rational(0));
  }
  lp.add_constraint(budget, Relation::kLessEqual, Rational(1));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(1, 3));
}

TEST(Lp, Infeasible) {
  LinearProgram lp;
  const auto x = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  lp.add_constraint({{x, Rational(1)}}, Relation::kGreaterEqual, Rational(2));
  lp.add_constraint({{x, Rational(1)}}, Relation::kLessEqual, Rational(1));
  EXPECT_EQ(lp_solve(lp).status, LpStatus::kInfeasible);

  LinearProgram crossed;
  crossed.add_variable(Rational(2), Rational(1), Rational(0));
  EXPECT_EQ(lp_solve(crossed).status, LpStatus::kInfeasible);
}

TEST(Lp, Unbounded) {
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto x = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  const auto y = lp.add_variable(Rational(0), std::nullopt, Rational(0));
  lp.add_constraint({{x, Rational(1)}, {y, Rational(-1)}}, Relation::kLessEqual, Rational(3));
  EXPECT_EQ(lp_solve(lp).status, LpStatus::kUnbounded);
}

TEST(Lp, MinimizeWithEqualityAndFreeVariable) {
  // min x + 2y s.t. x + y = 3, x - y >= -1, y >= -1, x >= 0, y free.
  LinearProgram lp;
  lp.sense = LpSense::kMinimize;
  const auto x = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  const auto y = lp.add_variable(std::nullopt, std::nullopt, Rational(2));
  lp.add_constraint({{x, Rational(1)}, {y, Rational(1)}}, Relation::kEqual, Rational(3));
  lp.add_constraint({{x, Rational(1)}, {y, Rational(-1)}}, Relation::kGreaterEqual, Rational(-1));
  lp.add_constraint({{y, Rational(1)}}, Relation::kGreaterEqual, Rational(-1));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.point[y], -1);
  EXPECT_EQ(r.point[x], 4);
  EXPECT_EQ(r.value, 2);
}

TEST(Lp, RedundantEqualities) {
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto x = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  const auto y = lp.add_variable(Rational(0), std::nullopt, Rational(1));
  lp.add_constraint({{x, Rational(1)}, {y, Rational(1)}}, Relation::kEqual, Rational(2));
  lp.add_constraint({{x, Rational(2)}, {y, Rational(2)}}, Relation::kEqual, Rational(4));
  lp.add_constraint({{x, Rational(1)}}, Relation::kLessEqual, Rational(1, 2));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 2);
}

TEST(Lp, DegenerateVertexTerminates) {
  // Classic cycling example under the largest-coefficient rule.
  LinearProgram lp;
  lp.sense = LpSense::kMaximize;
  const auto x1 = lp.add_variable(Rational(0), std::nullopt, Rational(10));
  const auto x2 = lp.add_variable(Rational(0), std::nullopt, Rational(-57));
  const auto x3 = lp.add_variable(Rational(0), std::nullopt, Rational(-9));
  const auto x4 = lp.add_variable(Rational(0), std::nullopt, Rational(-24));
  lp.add_constraint({{x1, Rational(1, 2)}, {x2, Rational(-11, 2)}, {x3, Rational(-5, 2)}, {x4, Rational(9)}},
                    Relation::kLessEqual, Rational(0));
  lp.add_constraint({{x1, Rational(1, 2)}, {x2, Rational(-3, 2)}, {x3, Rational(-1, 2)}, {x4, Rational(1)}},
                    Relation::kLessEqual, Rational(0));
  lp.add_constraint({{x1, Rational(1)}}, Relation::kLessEqual, Rational(1));
  const LpResult r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 1);
}

}  // namespace
}  // namespace rrsp
