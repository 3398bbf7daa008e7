#include "it2fgp/dialogue.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace it2fgp {

namespace {

struct StageError {
  std::string stage;
  Error error;
};

template <class F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError{stage, e};
  }
}

bool has_singular_exponent(const CrispSignomial& fn, std::size_t l) {
  return std::any_of(fn.terms.begin(), fn.terms.end(), [&](const auto& t) {
    const double e = t.exponents[l];
    return t.coeff != 0.0 && e != 0.0 && e < 1.0;
  });
}

// Moves components that sit on a gradient singularity a little into the box.
std::vector<double> expansion_point(std::vector<double> x, const CrispSignomial& mu, const Box& box) {
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] > kGradientEpsilon || !has_singular_exponent(mu, l)) continue;
    const double width = box.upper[l] - box.lower[l];
    x[l] = width > 0.0 ? box.lower[l] + 1e-3 * width : std::max(box.lower[l], 1e-6);
    x[l] = std::max(x[l], 2.0 * kGradientEpsilon);
  }
  return x;
}

struct Linearized {
  std::vector<LinearFn> fns;
  std::vector<std::vector<double>> points;
};

Linearized linearize_all(const SessionState& s, const std::vector<double>* incumbent) {
  Linearized out;
  for (const auto& g : s.goals) {
    const auto& f = s.crisp.objectives[g.objective].fn;
    const auto mu = unclamped_membership(g, f);
    if (is_affine(mu)) {
      out.fns.push_back(to_linear(mu, s.crisp.dimension()));
      out.points.emplace_back();
      continue;
    }
    std::vector<double> at;
    if (incumbent) {
      at = *incumbent;
    } else {
      at = staged("argmax", [&] { return maximize_over_box(mu, Sense::maximize, s.box, s.config.nlp).x; });
    }
    at = expansion_point(std::move(at), mu, s.box);
    out.fns.push_back(staged("linearize", [&] { return taylor_linearize(g, f, at); }));
    out.points.push_back(std::move(at));
  }
  return out;
}

Iteration solve_iteration(const SessionState& s, Linearized lin) {
  Iteration it;
  it.goals = s.goals;
  const std::size_t number = s.iterations.size() + 1;
  const auto model = assemble_fgp(lin.fns, s.box, s.config.fgp);
  if (s.config.on_lp) s.config.on_lp(number, model);
  const auto sol = staged("lp", [&] { return simplex_solve(model); });
  if (sol.status != LpStatus::optimal) {
    throw StageError{"lp", Error(ErrorCode::infeasible_or_unbounded,
                                 sol.status == LpStatus::infeasible ? "goal programme is infeasible"
                                                                    : "goal programme is unbounded")};
  }
  Proposal& p = it.proposal;
  p.iteration = number;
  p.x = sol.x;
  for (const auto& obj : s.crisp.objectives) p.objective_values.push_back(eval_fn(obj.fn, p.x));
  for (const auto& g : s.initial_goals) p.memberships.push_back(membership_of_value(g, p.objective_values[g.objective]));
  for (const auto& g : s.goals) p.current_memberships.push_back(membership_of_value(g, p.objective_values[g.objective]));
  p.beta = sol.beta;
  p.d_minus = sol.d_minus;
  p.d_plus = sol.d_plus;
  p.linearization_points = std::move(lin.points);
  it.linearizations = std::move(lin.fns);
  return it;
}

void mark_failed(SessionState& s, const StageError& e) {
  s.status = SessionStatus::failed;
  s.failure = SessionFailure{e.stage, e.error.code(), e.error.what()};
}

SessionState open_crisp(SessionState s) {
  try {
    s.payoff = staged("payoff", [&] { return payoff_table(s.crisp, s.config.nlp); });
    s.box = staged("box", [&] { return variable_box(s.payoff); });
    s.initial_goals = staged("goals", [&] { return build_goals(s.payoff); });
    s.goals = s.initial_goals;
    s.iterations.push_back(solve_iteration(s, linearize_all(s, nullptr)));
    s.status = SessionStatus::awaiting_decision;
  } catch (const StageError& e) {
    mark_failed(s, e);
  }
  return s;
}

}  // namespace

const Proposal& SessionState::proposal() const {
  if (iterations.empty()) throw Error(ErrorCode::invalid_state, "session has no proposal");
  return iterations.back().proposal;
}

SessionState open_session(const FuzzyProgram& program, const SessionConfig& config) {
  SessionState s;
  s.config = config;
  s.fuzzy = program;
  try {
    s.crisp = staged("defuzzify", [&] {
      const auto report = validate_program(program);
      for (const auto& issue : report.issues) {
        if (issue.severity == Severity::error) {
          throw Error(ErrorCode::structural, issue.path + ": " + issue.message);
        }
      }
      return defuzzify_program(program);
    });
  } catch (const StageError& e) {
    mark_failed(s, e);
    return s;
  }
  return open_crisp(std::move(s));
}

SessionState open_session(const CrispProgram& program, const SessionConfig& config) {
  SessionState s;
  s.config = config;
  s.crisp = program;
  return open_crisp(std::move(s));
}

SessionState decide(const SessionState& state, const Decision& decision) {
  if (state.status != SessionStatus::awaiting_decision) {
    throw Error(ErrorCode::invalid_state, state.status == SessionStatus::finished ? "session is finished"
                                                                                 : "session has failed");
  }
  SessionState s = state;
  if (decision.verdict == Verdict::satisfied) {
    if (!decision.targets.empty()) throw Error(ErrorCode::invalid_argument, "satisfied takes no targets");
    s.iterations.back().decision = decision;
    s.status = SessionStatus::finished;
    return s;
  }

  if (decision.targets.empty()) throw Error(ErrorCode::invalid_argument, "revise needs at least one target");
  std::set<std::size_t> seen;
  for (auto k : decision.targets) {
    if (k >= s.goals.size()) {
      throw Error(ErrorCode::invalid_argument, "target " + std::to_string(k) + " is not an objective").with_index(k);
    }
    if (!seen.insert(k).second) {
      throw Error(ErrorCode::invalid_argument, "target " + std::to_string(k) + " repeated").with_index(k);
    }
  }

  const Proposal& last = s.proposal();
  bool changed = false;
  for (auto k : decision.targets) {
    auto& g = s.goals[k];
    const double f = last.objective_values[g.objective];
    const bool improves = g.kind == GoalKind::max_goal ? f > g.limit : f < g.limit;
    if (!improves) continue;
    if (std::abs(g.aspiration - f) < min_goal_width(g.aspiration)) {
      throw Error(ErrorCode::no_progress,
                  "objective " + std::to_string(k + 1) + " already meets its aspiration; its tolerance interval cannot shrink further")
          .with_index(k);
    }
    if (f != g.limit) changed = true;
    g.limit = f;
  }
  if (!changed) throw Error(ErrorCode::no_progress, "the revision leaves every tolerance limit unchanged");

  s.iterations.back().decision = decision;
  try {
    const std::vector<double> incumbent = last.x;
    auto lin = linearize_all(s, s.config.relinearize_at_argmax ? nullptr : &incumbent);
    s.iterations.push_back(solve_iteration(s, std::move(lin)));
  } catch (const StageError& e) {
    mark_failed(s, e);
  }
  return s;
}

SessionState replay(SessionState state, const std::vector<Decision>& decisions) {
  for (const auto& d : decisions) {
    if (state.status != SessionStatus::awaiting_decision) break;
    state = decide(state, d);
  }
  return state;
}

}  // namespace it2fgp
