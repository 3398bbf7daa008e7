#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "it2fgp/error.hpp"
#include "it2fgp/goalmem.hpp"
#include "it2fgp/linear_fn.hpp"
#include "it2fgp/lpsolve.hpp"
#include "it2fgp/nlpcore.hpp"
#include "it2fgp/signomial.hpp"

namespace it2fgp {

struct Proposal {
  std::size_t iteration = 1;
  std::vector<double> x;
  std::vector<double> objective_values;
  /// Clamped memberships of the original objectives against the goals built
  /// from the payoff table.
  std::vector<double> memberships;
  /// Same, against the tolerance limits in force for this iteration.
  std::vector<double> current_memberships;
  double beta = 0.0;
  std::vector<double> d_minus;
  std::vector<double> d_plus;
  /// Expansion point per goal; empty for goals that are already affine.
  std::vector<std::vector<double>> linearization_points;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

enum class Verdict { satisfied, revise };

struct Decision {
  Verdict verdict = Verdict::satisfied;
  std::vector<std::size_t> targets;

  friend bool operator==(const Decision&, const Decision&) = default;
};

enum class SessionStatus { awaiting_decision, finished, failed };

struct SessionConfig {
  NlpConfig nlp;
  FgpOptions fgp;
  /// Re-run the box argmax on every iteration instead of expanding about the
  /// incumbent.
  bool relinearize_at_argmax = false;
  /// Called with every assembled LP before it is solved.
  std::function<void(std::size_t iteration, const LpModel&)> on_lp;
};

struct Iteration {
  std::vector<MembershipSpec> goals;
  std::vector<LinearFn> linearizations;
  Proposal proposal;
  std::optional<Decision> decision;

  friend bool operator==(const Iteration&, const Iteration&) = default;
};

struct SessionFailure {
  std::string stage;  // defuzzify, payoff, box, goals, argmax, linearize, lp
  ErrorCode code = ErrorCode::invalid_state;
  std::string message;
};

struct SessionState {
  std::optional<FuzzyProgram> fuzzy;
  CrispProgram crisp;
  PayoffTable payoff;
  Box box;
  std::vector<MembershipSpec> initial_goals;
  std::vector<MembershipSpec> goals;
  std::vector<Iteration> iterations;
  SessionStatus status = SessionStatus::awaiting_decision;
  std::optional<SessionFailure> failure;
  SessionConfig config;

  /// The latest proposal. Throws invalid_state when there is none.
  const Proposal& proposal() const;
};

SessionState open_session(const FuzzyProgram& program, const SessionConfig& config = {});
SessionState open_session(const CrispProgram& program, const SessionConfig& config = {});

/// Applies a verdict to the latest proposal and returns the next state.
///
/// Throws invalid_state unless the session awaits a decision, invalid_argument
/// for malformed targets, and no_progress when a revision would collapse a
/// tolerance interval or change nothing. A solver failure while re-solving
/// yields a failed state.
SessionState decide(const SessionState& state, const Decision& decision);

/// Runs decisions in order until the session leaves awaiting_decision.
SessionState replay(SessionState state, const std::vector<Decision>& decisions);

}  // namespace it2fgp
