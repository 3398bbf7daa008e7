#include <sstream>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "it2fgp/baseline.hpp"
#include "it2fgp/error.hpp"

namespace it2fgp {
namespace {

const std::vector<LinearFn> kGoals = {{{0.304, -0.014, 0.156}, 0.712}, {{-0.120, -0.157, -0.169}, 3.383}};
const Box kBox{{0.0, 12.344, 0.0}, {0.457, 20.862, 2.703}};

TEST(GoalWeights, InverseWidths) {
  const auto w = goal_weights({{GoalKind::max_goal, 76.694, 29.785, 0}, {GoalKind::min_goal, 54.699, 77.653, 1}});
  EXPECT_NEAR(w[0], 1 / 46.909, 1e-12);
  EXPECT_NEAR(w[1], 1 / 22.954, 1e-12);
  const auto unit = goal_weights({{GoalKind::max_goal, 1.0, 0.0, 0}, {GoalKind::min_goal, 2.0, 3.0, 1}});
  EXPECT_EQ(unit, (std::vector<double>{1.0, 1.0}));
}

TEST(WeightedAdditive, FeasibleWithMembershipsInRange) {
  const auto s = solve_weighted_additive(kGoals, kBox, {1 / 46.909, 1 / 22.954});
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_TRUE(kBox.contains(s.x, 1e-9));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_GE(s.d_minus[k], -1e-12);
    EXPECT_NEAR(kGoals[k](s.x) + s.d_minus[k] - s.d_plus[k], 1.0, 1e-9);
  }
  EXPECT_FALSE(s.values.empty());
}

TEST(WeightedAdditive, OneGoalMatchesTheMinMaxSolve) {
  const std::vector<LinearFn> one = {kGoals[0]};
  const auto a = solve_weighted_additive(one, kBox, {1.0});
  const auto b = simplex_solve(assemble_fgp(one, kBox));
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
  EXPECT_NEAR(kGoals[0](a.x), kGoals[0](b.x), 1e-9);
}

TEST(WeightedAdditive, AttainableGoalsCostNothing) {
  const Box box{{0.0}, {5.0}};
  const auto s = solve_weighted_additive({{{0.5}, 0.0}, {{0.25}, 0.5}}, box, {1.0, 1.0});
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective, 0.0, 1e-12);
}

TEST(ReferenceTable, ExampleOneRows) {
  const auto rows = reference_table(1);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].f, (std::vector<double>{74.938, 54.699}));
  EXPECT_EQ(rows[0].mu, (std::vector<double>{0.963, 1.00}));
  EXPECT_EQ(rows[3].method, "Model II [40]");
  EXPECT_EQ(rows[3].f, (std::vector<double>{75.950, 55.443}));
  EXPECT_NEAR(rows[0].membership_sum(), 1.963, 1e-12);
}

TEST(ReferenceTable, ExampleTwoObjectiveValues) {
  const auto rows = reference_table(2);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1].f[0], 263.617);
  EXPECT_EQ(rows[2].f[0], 257.515);
  EXPECT_EQ(rows[3].f[0], 280.011);
}

TEST(ReferenceTable, UnknownExample) {
  try {
    reference_table(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(ComparisonCsv, HeaderAndRows) {
  std::ostringstream out;
  write_comparison_csv(reference_table(1), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("method,", 0), 0u);
  EXPECT_NE(line.find("mu2"), std::string::npos);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_NE(out.str().find("74.938"), std::string::npos);
}

}  // namespace
}  // namespace it2fgp
