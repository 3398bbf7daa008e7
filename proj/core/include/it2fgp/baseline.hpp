#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "it2fgp/goalmem.hpp"
#include "it2fgp/linear_fn.hpp"
#include "it2fgp/lpsolve.hpp"
#include "it2fgp/nlpcore.hpp"

namespace it2fgp {

/// A published result, kept for display. `x` is empty when not reported.
struct ReferenceRow {
  std::string method;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> mu;

  double membership_sum() const;
};

/// w_k = 1 / width of goal k.
std::vector<double> goal_weights(const std::vector<MembershipSpec>& specs);

/// minimize sum_k w_k d-_k subject to the goal rows over the box.
LpSolution solve_weighted_additive(const std::vector<LinearFn>& goals, const Box& box,
                                   const std::vector<double>& weights,
                                   const FgpOptions& options = {});

/// Published comparison rows for example 1 or 2; the first row is the
/// proposed method. Throws invalid_argument for other ids.
std::vector<ReferenceRow> reference_table(int example);

/// method,x1..xn,f1..fl,mu1..mul
void write_comparison_csv(const std::vector<ReferenceRow>& rows, std::ostream& out);

}  // namespace it2fgp
