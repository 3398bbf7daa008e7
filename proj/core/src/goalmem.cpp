#include "it2fgp/goalmem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "it2fgp/error.hpp"

namespace it2fgp {

double MembershipSpec::width() const { return std::abs(aspiration - limit); }

double min_goal_width(double aspiration) { return 1e-6 * (1.0 + std::abs(aspiration)); }

void check_goal(const MembershipSpec& spec) {
  const double signed_width =
      spec.kind == GoalKind::max_goal ? spec.aspiration - spec.limit : spec.limit - spec.aspiration;
  if (!(signed_width >= min_goal_width(spec.aspiration))) {
    throw Error(ErrorCode::degenerate_goal,
                "goal " + std::to_string(spec.objective + 1) + " has a degenerate tolerance interval")
        .with_index(spec.objective);
  }
}

std::vector<MembershipSpec> build_goals(const PayoffTable& table) {
  std::vector<MembershipSpec> goals;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    MembershipSpec spec;
    spec.objective = k;
    if (row.sense == Sense::maximize) {
      spec.kind = GoalKind::max_goal;
      spec.aspiration = row.max.value;
      spec.limit = row.min.value;
    } else {
      spec.kind = GoalKind::min_goal;
      spec.aspiration = row.min.value;
      spec.limit = row.max.value;
    }
    check_goal(spec);
    goals.push_back(spec);
  }
  return goals;
}

double membership_of_value(const MembershipSpec& spec, double value) {
  const double raw = spec.kind == GoalKind::max_goal
                         ? (value - spec.limit) / (spec.aspiration - spec.limit)
                         : (spec.limit - value) / (spec.limit - spec.aspiration);
  return std::clamp(raw, 0.0, 1.0);
}

double eval_membership(const MembershipSpec& spec, const CrispSignomial& f,
                       std::span<const double> x) {
  return membership_of_value(spec, eval_fn(f, x));
}

CrispSignomial unclamped_membership(const MembershipSpec& spec, const CrispSignomial& f) {
  check_goal(spec);
  // (f - L)/(s - L) for max-goals, (U - f)/(U - s) = (f - U)/(s - U) for min-goals
  const double width = spec.aspiration - spec.limit;
  CrispSignomial out;
  std::size_t n = 0;
  for (const auto& t : f.terms) {
    out.terms.push_back({t.coeff * t.sign / width, t.exponents, 1});
    n = t.exponents.size();
  }
  out.terms.push_back({-spec.limit / width, std::vector<double>(n, 0.0), 1});
  return out;
}

LinearFn to_linear(const CrispSignomial& fn, std::size_t n) {
  if (!is_affine(fn)) throw Error(ErrorCode::invalid_argument, "signomial is not affine");
  LinearFn out{std::vector<double>(n, 0.0), 0.0};
  for (const auto& t : fn.terms) {
    if (t.exponents.size() != n) throw Error(ErrorCode::dimension, "term dimension mismatch");
    const double c = t.coeff * t.sign;
    const auto it = std::find(t.exponents.begin(), t.exponents.end(), 1.0);
    if (it == t.exponents.end()) {
      out.constant += c;
    } else {
      out.coeffs[static_cast<std::size_t>(it - t.exponents.begin())] += c;
    }
  }
  return out;
}

LinearFn taylor_linearize(const MembershipSpec& spec, const CrispSignomial& f,
                          std::span<const double> x_star) {
  const CrispSignomial mu = unclamped_membership(spec, f);
  const std::size_t n = x_star.size();
  if (is_affine(mu)) return to_linear(mu, n);
  const auto grad = grad_fn(mu, x_star);
  LinearFn out{grad, eval_fn(mu, x_star)};
  for (std::size_t l = 0; l < n; ++l) out.constant -= grad[l] * x_star[l];
  return out;
}

}  // namespace it2fgp
