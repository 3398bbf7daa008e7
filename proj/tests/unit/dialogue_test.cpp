#include <gtest/gtest.h>

#include "helpers.hpp"
#include "it2fgp/dialogue.hpp"
#include "it2fgp/error.hpp"
#include "it2fgp/goalmem.hpp"

namespace it2fgp {
namespace {

using testing::crisp_fixture;
using testing::fuzzy_fixture;

class DialogueTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ex1_ = new SessionState(open_session(crisp_fixture("example1_crisp")));
    ex2_ = new SessionState(open_session(crisp_fixture("example2_crisp")));
  }
  static void TearDownTestSuite() {
    delete ex1_;
    delete ex2_;
  }
  static SessionState* ex1_;
  static SessionState* ex2_;
};

SessionState* DialogueTest::ex1_ = nullptr;
SessionState* DialogueTest::ex2_ = nullptr;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::parse;
}

TEST_F(DialogueTest, ExampleTwoFirstProposal) {
  ASSERT_EQ(ex2_->status, SessionStatus::awaiting_decision);
  const auto& p = ex2_->proposal();
  EXPECT_NEAR(p.x[0], 1.051, 2e-2);
  EXPECT_NEAR(p.x[1], 3.331, 2e-2);
  EXPECT_NEAR(p.x[2], 1.432, 2e-2);
  EXPECT_NEAR(p.objective_values[0], 270.366, 0.5);
  EXPECT_NEAR(p.objective_values[1], 20.820, 0.1);
  EXPECT_NEAR(p.memberships[0], 0.931, 0.01);
  EXPECT_NEAR(p.memberships[1], 1.0, 0.01);
  EXPECT_EQ(p.memberships, p.current_memberships);
}

TEST_F(DialogueTest, ExampleOneFirstProposalIsAdmissible) {
  ASSERT_EQ(ex1_->status, SessionStatus::awaiting_decision);
  const auto& p = ex1_->proposal();
  EXPECT_TRUE(ex1_->box.contains(p.x, 1e-9));
  EXPECT_LE(p.beta, 0.03);
  for (double mu : p.memberships) {
    EXPECT_GE(mu, 0.0);
    EXPECT_LE(mu, 1.0);
  }
  // one linearization point for the nonlinear goal, none for the affine one
  EXPECT_EQ(p.linearization_points[0].size(), 3u);
  EXPECT_TRUE(p.linearization_points[1].empty());
}

TEST_F(DialogueTest, SatisfiedFreezesTheProposal) {
  const auto done = decide(*ex1_, {Verdict::satisfied, {}});
  EXPECT_EQ(done.status, SessionStatus::finished);
  EXPECT_EQ(done.proposal(), ex1_->proposal());
  EXPECT_EQ(done.iterations.back().decision, (Decision{Verdict::satisfied, {}}));
  EXPECT_EQ(code_of([&] { decide(done, {Verdict::satisfied, {}}); }), ErrorCode::invalid_state);
}

TEST_F(DialogueTest, MalformedDecisions) {
  EXPECT_EQ(code_of([&] { decide(*ex2_, {Verdict::revise, {}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { decide(*ex2_, {Verdict::revise, {7}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { decide(*ex2_, {Verdict::revise, {0, 0}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([&] { decide(*ex2_, {Verdict::satisfied, {0}}); }), ErrorCode::invalid_argument);
}

TEST_F(DialogueTest, RevisingAGoalAtItsAspirationIsNoProgress) {
  ASSERT_NEAR(ex2_->proposal().memberships[1], 1.0, 1e-9);
  EXPECT_EQ(code_of([&] { decide(*ex2_, {Verdict::revise, {1}}); }), ErrorCode::no_progress);
}

TEST_F(DialogueTest, RevisionTightensTheTargetedLimit) {
  const auto s = decide(*ex2_, {Verdict::revise, {0}});
  ASSERT_EQ(s.status, SessionStatus::awaiting_decision);
  ASSERT_EQ(s.iterations.size(), 2u);
  const double f1 = ex2_->proposal().objective_values[0];
  EXPECT_EQ(s.goals[0].limit, f1);
  EXPECT_EQ(s.goals[1], ex2_->goals[1]);
  EXPECT_EQ(s.initial_goals, ex2_->initial_goals);
  EXPECT_EQ(s.iterations[1].goals, s.goals);

  const auto& p = s.proposal();
  EXPECT_EQ(p.iteration, 2u);
  EXPECT_GT(p.beta, 0.0);
  EXPECT_GE(p.objective_values[0], f1 - 1e-6);
  EXPECT_TRUE(s.box.contains(p.x, 1e-9));
  EXPECT_EQ(p.linearization_points[0], ex2_->proposal().x);
  EXPECT_NEAR(p.current_memberships[0], membership_of_value(s.goals[0], p.objective_values[0]), 1e-15);
  EXPECT_NEAR(p.memberships[0], membership_of_value(s.initial_goals[0], p.objective_values[0]), 1e-15);
  EXPECT_EQ(s.iterations[0].decision, (Decision{Verdict::revise, {0}}));
}

TEST_F(DialogueTest, ArgmaxRelinearizationOption) {
  SessionState base = *ex2_;
  base.config.relinearize_at_argmax = true;
  const auto s = decide(base, {Verdict::revise, {0}});
  ASSERT_EQ(s.iterations.size(), 2u);
  EXPECT_EQ(s.proposal().linearization_points[0], ex2_->proposal().linearization_points[0]);
}

TEST_F(DialogueTest, ReplayStopsAtTheFirstTerminalState) {
  const std::vector<Decision> script = {{Verdict::satisfied, {}}, {Verdict::revise, {0}}};
  const auto s = replay(*ex1_, script);
  EXPECT_EQ(s.status, SessionStatus::finished);
  EXPECT_EQ(s.iterations.size(), 1u);
}

TEST(Dialogue, FuzzyProgramKeepsBothForms) {
  const auto fuzzy = fuzzy_fixture("example2_fuzzy");
  const auto s = open_session(fuzzy);
  ASSERT_TRUE(s.fuzzy);
  EXPECT_EQ(*s.fuzzy, fuzzy);
  EXPECT_EQ(s.crisp, defuzzify_program(fuzzy));
  EXPECT_EQ(s.status, SessionStatus::awaiting_decision);
}

TEST(Dialogue, AffineObjectivesNeedOneLp) {
  CrispProgram p;
  p.variables = {"x1", "x2"};
  p.objectives.push_back({Sense::maximize, {{{1.0, {1, 0}, 1}, {1.0, {0, 1}, 1}}}});
  p.objectives.push_back({Sense::minimize, {{{1.0, {1, 0}, 1}}}});
  p.constraints.push_back({{{{1.0, {1, 0}, 1}, {2.0, {0, 1}, 1}}}, Relation::less_equal, 4.0});
  p.constraints.push_back({{{{1.0, {1, 0}, 1}}}, Relation::less_equal, 3.0});
  int lps = 0;
  SessionConfig cfg;
  cfg.on_lp = [&](std::size_t, const LpModel&) { ++lps; };
  const auto s = open_session(p, cfg);
  ASSERT_EQ(s.status, SessionStatus::awaiting_decision);
  EXPECT_EQ(lps, 1);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(s.iterations[0].linearizations[k], to_linear(unclamped_membership(s.goals[k], p.objectives[k].fn), 2));
    EXPECT_TRUE(s.proposal().linearization_points[k].empty());
  }
}

TEST(Dialogue, FailureCarriesTheStage) {
  CrispProgram p;
  p.variables = {"x1"};
  p.objectives.push_back({Sense::maximize, {{{1.0, {1}, 1}}}});
  p.objectives.push_back({Sense::minimize, {{{1.0, {1}, 1}}}});
  p.constraints.push_back({{{{1.0, {1}, 1}}}, Relation::less_equal, 1.0});
  p.constraints.push_back({{{{1.0, {1}, 1}}}, Relation::greater_equal, 2.0});
  const auto s = open_session(p);
  EXPECT_EQ(s.status, SessionStatus::failed);
  ASSERT_TRUE(s.failure);
  EXPECT_EQ(s.failure->stage, "payoff");
  EXPECT_EQ(s.failure->code, ErrorCode::infeasible_or_unbounded);
  EXPECT_TRUE(s.iterations.empty());
  EXPECT_EQ(code_of([&] { s.proposal(); }), ErrorCode::invalid_state);
  EXPECT_EQ(code_of([&] { decide(s, {Verdict::satisfied, {}}); }), ErrorCode::invalid_state);
}

TEST(Dialogue, ConstantObjectiveFailsAtGoals) {
  CrispProgram p;
  p.variables = {"x1"};
  p.objectives.push_back({Sense::maximize, {{{1.0, {1}, 1}}}});
  p.objectives.push_back({Sense::minimize, {{{5.0, {0}, 1}}}});
  p.constraints.push_back({{{{1.0, {1}, 1}}}, Relation::less_equal, 1.0});
  const auto s = open_session(p);
  ASSERT_EQ(s.status, SessionStatus::failed);
  EXPECT_EQ(s.failure->stage, "goals");
  EXPECT_EQ(s.failure->code, ErrorCode::degenerate_goal);
}

}  // namespace
}  // namespace it2fgp
