#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "it2fgp/linear_fn.hpp"
#include "it2fgp/signomial.hpp"

namespace it2fgp {

/// Settings for the multistart penalty search.
struct NlpConfig {
  std::size_t restarts = 64;
  std::uint64_t seed = 42;
  /// Quadratic-penalty weights, applied in order with warm starts.
  std::vector<double> penalty_schedule = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7};
  double tolerance = 1e-8;
  std::size_t max_iterations = 2000;
  /// Search upper bounds. When unset they are derived from the constraints
  /// with a fallback of 10x the largest right-hand side.
  std::optional<std::vector<double>> upper_guess;
  /// Scaled feasibility tolerance: |violation| / (1 + |rhs|).
  double feasibility_tolerance = 1e-6;
  /// Worker threads for restarts; results do not depend on this value.
  std::size_t threads = 1;
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  bool contains(std::span<const double> x, double tol = 0.0) const;
  friend bool operator==(const Box&, const Box&) = default;
};

/// One line of the run log.
struct RestartRecord {
  std::size_t index = 0;
  std::vector<double> start;
  std::size_t iterations = 0;
  double value = 0.0;
  double violation = 0.0;
};

struct NlpResult {
  std::vector<double> x;
  double value = 0.0;
  double violation = 0.0;
  std::vector<double> search_upper;
  std::vector<RestartRecord> log;
};

/// Optimizes objective `objective` of `program` in direction `sense`
/// (independent of the objective's declared sense) over the constraint region
/// and x >= 0. Deterministic for a given config.
///
/// Throws infeasible_or_unbounded when no restart reaches a feasible point or
/// the best point rests on a search bound that no constraint implies, and
/// non_convergence (with the best point attached) when the best restart is
/// nearly but not fully feasible.
NlpResult solve_single(const CrispProgram& program, std::size_t objective,
                       Sense sense, const NlpConfig& config = {});

struct PayoffEntry {
  std::vector<double> x;
  double value = 0.0;
  /// Every objective evaluated at x.
  std::vector<double> objective_values;
  std::vector<double> search_upper;
  std::vector<RestartRecord> log;
};

struct PayoffRow {
  Sense sense = Sense::maximize;  // declared sense of the objective
  PayoffEntry max;
  PayoffEntry min;
};

struct PayoffTable {
  std::vector<PayoffRow> rows;
};

PayoffTable payoff_table(const CrispProgram& program, const NlpConfig& config = {});

/// Per variable, the hull of all recorded payoff solutions.
Box variable_box(const PayoffTable& table);

struct GridOptions {
  std::size_t resolution = 200;
  /// Defaults to [0, implied upper bound] per variable.
  std::optional<Box> bounds;
  /// Scaled tolerance accepted on equality rows.
  double equality_tolerance = 1e-2;
};

struct GridResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> spacing;
};

/// Exhaustive grid search, for verification only. Supports up to 4 variables.
GridResult grid_oracle(const CrispProgram& program, std::size_t objective,
                       Sense sense, const GridOptions& options = {});

/// Optimizes `fn` over a box by projected multistart search.
NlpResult maximize_over_box(const CrispSignomial& fn, Sense sense, const Box& box,
                            const NlpConfig& config = {});
/// Closed form: each variable goes to the bound favoured by its coefficient.
NlpResult maximize_over_box(const LinearFn& fn, Sense sense, const Box& box,
                            const NlpConfig& config = {});

}  // namespace it2fgp
