#pragma once

#include <span>
#include <vector>

#include "it2fgp/linear_fn.hpp"
#include "it2fgp/nlpcore.hpp"
#include "it2fgp/signomial.hpp"

namespace it2fgp {

enum class GoalKind { max_goal, min_goal };

/// A fuzzy goal: aspiration s and tolerance limit (L for max-goals, U for
/// min-goals) of objective `objective`.
struct MembershipSpec {
  GoalKind kind = GoalKind::max_goal;
  double aspiration = 0.0;
  double limit = 0.0;
  std::size_t objective = 0;

  /// |s - limit|
  double width() const;
  friend bool operator==(const MembershipSpec&, const MembershipSpec&) = default;
};

/// Smallest admissible interval width for aspiration s.
double min_goal_width(double aspiration);

/// One goal per objective, read off the payoff table. Throws degenerate_goal
/// (index = objective) when the interval is narrower than min_goal_width.
std::vector<MembershipSpec> build_goals(const PayoffTable& table);

/// Throws degenerate_goal when the spec's interval is too narrow or points the
/// wrong way for its kind.
void check_goal(const MembershipSpec& spec);

/// Clamped membership of f at x.
double eval_membership(const MembershipSpec& spec, const CrispSignomial& f,
                       std::span<const double> x);
/// Clamped membership of an objective value.
double membership_of_value(const MembershipSpec& spec, double value);

/// The middle branch as a signomial: coefficients over the width (negated for
/// min-goals) plus one constant term.
CrispSignomial unclamped_membership(const MembershipSpec& spec, const CrispSignomial& f);

/// First-order expansion of the unclamped membership about x_star, constant
/// included. Affine memberships are returned exactly.
LinearFn taylor_linearize(const MembershipSpec& spec, const CrispSignomial& f,
                          std::span<const double> x_star);

/// Affine signomial to LinearFn. Throws invalid_argument when not affine.
LinearFn to_linear(const CrispSignomial& fn, std::size_t n);

}  // namespace it2fgp
