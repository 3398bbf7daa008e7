#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "it2fgp/goalmem.hpp"
#include "it2fgp/linear_fn.hpp"
#include "it2fgp/nlpcore.hpp"
#include "it2fgp/signomial.hpp"

namespace it2fgp {

struct LpColumn {
  std::string name;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double cost = 0.0;
};

struct LpRow {
  std::string name;
  std::vector<double> coeffs;  // one per column
  Relation relation = Relation::equal;
  double rhs = 0.0;
};

/// Column positions of the goal-programming variables inside an LpModel.
struct FgpLayout {
  std::size_t n = 0;           // decision variables occupy columns [0, n)
  std::size_t goals = 0;
  std::size_t d_minus = 0;     // first d- column
  std::optional<std::size_t> d_plus;
  std::optional<std::size_t> beta;
};

/// minimize cost·v subject to rows and column bounds. Lower bounds must be
/// finite; upper bounds may be +inf.
struct LpModel {
  std::vector<LpColumn> columns;
  std::vector<LpRow> rows;
  std::optional<FgpLayout> layout;

  std::size_t add_column(LpColumn column);
  std::size_t add_row(LpRow row);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> values;  // one per column
  double objective = 0.0;
  std::size_t pivots = 0;

  // Filled from the model's layout when it has one.
  std::vector<double> x;
  std::vector<double> d_minus;
  std::vector<double> d_plus;
  double beta = 0.0;
};

struct FgpOptions {
  /// Adds a zero-cost surplus d+ to every goal row so that a linearized goal
  /// above 1 on the box stays feasible.
  bool with_d_plus = true;
};

/// Rows mu_k(x) + d-_k (- d+_k) = 1 and beta - d-_k >= 0, box bounds on x,
/// d >= 0, 0 <= beta <= 1, objective minimize beta.
LpModel assemble_fgp(const std::vector<LinearFn>& goals, const Box& box,
                     const FgpOptions& options = {});

/// A single-objective nonlinear model whose last variable is the achievement
/// level (lambda for max-min, beta for min-max).
struct NlpModel {
  CrispProgram program;
  Sense sense = Sense::maximize;
};

/// maximize lambda s.t. mu_k(x) >= lambda, lambda <= 1, original constraints.
NlpModel assemble_maxmin(const std::vector<MembershipSpec>& specs, const CrispProgram& program);
/// minimize beta s.t. mu_k(x) + beta >= 1, beta <= 1, original constraints.
NlpModel assemble_minmax(const std::vector<MembershipSpec>& specs, const CrispProgram& program);
NlpResult solve_model(const NlpModel& model, const NlpConfig& config = {});

inline constexpr double kPivotTolerance = 1e-11;

/// Bounded-variable two-phase primal simplex with Bland's rule. Throws
/// degenerate_pivot when the selected pivot is below kPivotTolerance.
LpSolution simplex_solve(const LpModel& model);

inline constexpr std::size_t kVertexOracleLimit = 12;

/// Exhaustive enumeration of basic solutions. For models with at most
/// kVertexOracleLimit columns and a bounded objective.
LpSolution vertex_oracle(const LpModel& model);

/// Plain-text tableau, fixed 12-character columns.
void dump_lp(const LpModel& model, std::ostream& out);

/// Largest row or bound violation of `values`.
double lp_violation(const LpModel& model, const std::vector<double>& values);

}  // namespace it2fgp
