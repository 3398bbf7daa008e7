#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "it2fgp/error.hpp"
#include "it2fgp/nlpcore.hpp"

namespace it2fgp {
namespace {

using testing::crisp_fixture;

CrispSignomial linear(std::vector<double> c, double constant = 0.0) {
  CrispSignomial f;
  const std::size_t n = c.size();
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<double> e(n, 0.0);
    e[l] = 1.0;
    f.terms.push_back({c[l], e, 1});
  }
  if (constant != 0.0) f.terms.push_back({constant, std::vector<double>(n, 0.0), 1});
  return f;
}

/// Upper bounds x_l <= u_l as separate constraints.
CrispProgram box_program(const std::vector<double>& upper, CrispSignomial objective) {
  CrispProgram p;
  p.variables = default_variable_names(upper.size());
  p.objectives.push_back({Sense::maximize, std::move(objective)});
  for (std::size_t l = 0; l < upper.size(); ++l) {
    std::vector<double> c(upper.size(), 0.0);
    c[l] = 1.0;
    p.constraints.push_back({linear(c), Relation::less_equal, upper[l]});
  }
  return p;
}

// argmax of c*sqrt(x) - d*x style terms with a concave power, clamped to [lo, hi]
double clamp_concave_peak(double c, double p, double d, double lo, double hi) {
  const double peak = std::pow(d / (c * p), 1.0 / (p - 1.0));
  return std::clamp(peak, lo, hi);
}

TEST(SolveSingle, ExampleOneMinimumTime) {
  const auto r = solve_single(crisp_fixture("example1_crisp"), 1, Sense::minimize);
  EXPECT_NEAR(r.x[0], 0.457, 2e-2);
  EXPECT_NEAR(r.x[1], 14.808, 2e-2);
  EXPECT_NEAR(r.x[2], 0.0, 2e-2);
  EXPECT_NEAR(r.value, 54.699, 0.2);
  EXPECT_LE(r.violation, 1e-6);
}

TEST(SolveSingle, ExampleTwoMaximumTime) {
  const auto r = solve_single(crisp_fixture("example2_crisp"), 1, Sense::maximize);
  EXPECT_NEAR(r.x[0], 0.0, 2e-2);
  EXPECT_NEAR(r.x[1], 8.053, 2e-2);
  EXPECT_NEAR(r.x[2], 0.436, 2e-2);
}

TEST(SolveSingle, LinearObjectiveOnABoxEndsAtAVertex) {
  const auto p = box_program({2.0, 5.0}, linear({1.0, -1.0}));
  const auto r = solve_single(p, 0, Sense::maximize);
  EXPECT_NEAR(r.x[0], 2.0, 1e-6);
  EXPECT_NEAR(r.x[1], 0.0, 1e-6);
  EXPECT_NEAR(r.value, 2.0, 1e-6);
}

TEST(SolveSingle, DeterministicForSeedAndIndependentOfThreads) {
  const auto p = crisp_fixture("example2_crisp");
  NlpConfig one;
  NlpConfig three;
  three.threads = 3;
  const auto a = solve_single(p, 0, Sense::maximize, one);
  const auto b = solve_single(p, 0, Sense::maximize, one);
  const auto c = solve_single(p, 0, Sense::maximize, three);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.x, c.x);
  EXPECT_EQ(a.value, c.value);
}

TEST(SolveSingle, InfeasibleProgram) {
  auto p = box_program({1.0}, linear({1.0}));
  p.constraints.push_back({linear({1.0}), Relation::greater_equal, 3.0});
  try {
    solve_single(p, 0, Sense::maximize);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible_or_unbounded);
  }
}

TEST(SolveSingle, UnboundedProgram) {
  CrispProgram p;
  p.variables = {"x1"};
  p.objectives.push_back({Sense::maximize, linear({1.0})});
  p.constraints.push_back({linear({1.0}), Relation::greater_equal, 1.0});
  try {
    solve_single(p, 0, Sense::maximize);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible_or_unbounded);
  }
}

TEST(SolveSingle, EqualityConstraintIsHonoured) {
  auto p = box_program({4.0, 4.0}, linear({1.0, 2.0}));
  p.constraints.push_back({linear({1.0, 1.0}), Relation::equal, 3.0});
  const auto r = solve_single(p, 0, Sense::maximize);
  EXPECT_NEAR(r.x[0] + r.x[1], 3.0, 1e-5);
  EXPECT_NEAR(r.value, 6.0, 1e-4);
}

TEST(PayoffTable, ExampleTwoRanges) {
  const auto t = payoff_table(crisp_fixture("example2_crisp"));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_NEAR(t.rows[0].min.value, 120.885, 0.2);
  EXPECT_NEAR(t.rows[0].max.value, 281.523, 0.2);
  EXPECT_NEAR(t.rows[1].min.value, 20.820, 0.2);
  EXPECT_NEAR(t.rows[1].max.value, 30.858, 0.2);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row.max.objective_values.size(), 2u);
    EXPECT_FALSE(row.max.log.empty());
  }
}

TEST(PayoffTable, SingleObjective) {
  const auto t = payoff_table(box_program({1.0, 2.0}, linear({1.0, 1.0})));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_GE(t.rows[0].max.value, t.rows[0].min.value);
}

TEST(VariableBox, ExampleTwoHull) {
  const auto b = variable_box(payoff_table(crisp_fixture("example2_crisp")));
  const std::vector<double> lo = {0.0, 3.209, 0.0}, hi = {1.051, 8.053, 1.756};
  for (std::size_t l = 0; l < 3; ++l) {
    EXPECT_NEAR(b.lower[l], lo[l], 2e-2);
    EXPECT_NEAR(b.upper[l], hi[l], 2e-2);
  }
}

TEST(VariableBox, IdenticalSolutionsGiveADegenerateBox) {
  PayoffTable t;
  PayoffEntry e{{1.0, 2.0}, 0.0, {}, {}, {}};
  t.rows.push_back({Sense::maximize, e, e});
  const auto b = variable_box(t);
  EXPECT_EQ(b.lower, b.upper);
}

TEST(GridOracle, BoxOnlyLinearProgramHitsTheVertex) {
  const auto p = box_program({2.0, 3.0}, linear({1.0, 2.0}));
  const auto g = grid_oracle(p, 0, Sense::maximize, {50, std::nullopt});
  EXPECT_EQ(g.x, (std::vector<double>{2.0, 3.0}));
  EXPECT_DOUBLE_EQ(g.value, 8.0);
}

TEST(GridOracle, AgreesWithTheSolverOnRandomPrograms) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> a(0.5, 3.0), e(0.3, 0.9), b(2.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    CrispProgram p;
    p.variables = default_variable_names(2);
    CrispSignomial f;
    f.terms.push_back({a(rng), {e(rng), 0}, 1});
    f.terms.push_back({a(rng), {0, e(rng)}, 1});
    f.terms.push_back({-a(rng) * 0.2, {1, 0}, 1});
    p.objectives.push_back({Sense::maximize, f});
    p.constraints.push_back({linear({a(rng), a(rng)}), Relation::less_equal, b(rng)});
    const auto r = solve_single(p, 0, Sense::maximize);
    const auto g = grid_oracle(p, 0, Sense::maximize, {200, std::nullopt});
    EXPECT_GE(r.value, g.value - 1e-6) << trial;
    EXPECT_LE(r.value - g.value, 0.01 * (1 + std::abs(r.value))) << trial;
  }
}

TEST(GridOracle, TooManyVariables) {
  const auto p = box_program({1, 1, 1, 1, 1}, linear({1, 1, 1, 1, 1}));
  try {
    grid_oracle(p, 0, Sense::maximize, {3, std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported);
  }
}

TEST(MaximizeOverBox, ExampleOneProfitPeak) {
  const auto f = crisp_fixture("example1_crisp").objectives[0].fn;
  const Box box{{0.0, 12.344, 0.0}, {0.457, 20.862, 2.703}};
  const auto r = maximize_over_box(f, Sense::maximize, box);
  EXPECT_NEAR(r.x[0], clamp_concave_peak(22.854, 0.5, 2.631, 0.0, 0.457), 1e-5);
  EXPECT_NEAR(r.x[1], clamp_concave_peak(23.1, 0.5, 3.963, 12.344, 20.862), 1e-5);
  EXPECT_NEAR(r.x[2], clamp_concave_peak(22.98, 2.0 / 3.0, 3.66, 0.0, 2.703), 1e-5);
  EXPECT_NEAR(r.x[0], 0.458, 2e-2);
  EXPECT_NEAR(r.x[1], 12.344, 2e-2);
  EXPECT_NEAR(r.x[2], 2.703, 2e-2);
}

TEST(MaximizeOverBox, ExampleTwoProfitPeak) {
  const auto f = crisp_fixture("example2_crisp").objectives[0].fn;
  const Box box{{0.0, 3.209, 0.0}, {1.051, 8.053, 1.756}};
  const auto r = maximize_over_box(f, Sense::maximize, box);
  EXPECT_NEAR(r.x[0], 1.051, 2e-2);
  EXPECT_NEAR(r.x[1], 8.053, 2e-2);
  EXPECT_NEAR(r.x[2], 1.756, 2e-2);
}

TEST(MaximizeOverBox, AffineIncreasingGoesToTheUpperCorner) {
  const Box box{{1.0, -2.0}, {3.0, 5.0}};
  const auto r = maximize_over_box(linear({2.0, 0.5}), Sense::maximize, box);
  EXPECT_NEAR(r.x[0], 3.0, 1e-9);
  EXPECT_NEAR(r.x[1], 5.0, 1e-9);
  const auto lf = maximize_over_box(LinearFn{{2.0, -0.5}, 1.0}, Sense::maximize, box);
  EXPECT_EQ(lf.x, (std::vector<double>{3.0, -2.0}));
  EXPECT_DOUBLE_EQ(lf.value, 8.0);
  const auto lmin = maximize_over_box(LinearFn{{2.0, -0.5}, 1.0}, Sense::minimize, box);
  EXPECT_EQ(lmin.x, (std::vector<double>{1.0, 5.0}));
}

}  // namespace
}  // namespace it2fgp
