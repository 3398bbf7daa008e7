#include "it2fgp/baseline.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "it2fgp/error.hpp"

namespace it2fgp {

double ReferenceRow::membership_sum() const { return std::accumulate(mu.begin(), mu.end(), 0.0); }

std::vector<double> goal_weights(const std::vector<MembershipSpec>& specs) {
  std::vector<double> w;
  for (const auto& s : specs) {
    check_goal(s);
    w.push_back(1.0 / s.width());
  }
  return w;
}

LpSolution solve_weighted_additive(const std::vector<LinearFn>& goals, const Box& box,
                                   const std::vector<double>& weights, const FgpOptions& options) {
  if (weights.size() != goals.size()) throw Error(ErrorCode::dimension, "one weight per goal is required");
  LpModel m = assemble_fgp(goals, box, options);
  auto& layout = *m.layout;
  const std::size_t beta = *layout.beta;
  m.rows.erase(m.rows.begin() + static_cast<std::ptrdiff_t>(goals.size()), m.rows.end());
  m.columns.erase(m.columns.begin() + static_cast<std::ptrdiff_t>(beta));
  for (auto& r : m.rows) r.coeffs.erase(r.coeffs.begin() + static_cast<std::ptrdiff_t>(beta));
  layout.beta.reset();
  for (std::size_t k = 0; k < goals.size(); ++k) m.columns[layout.d_minus + k].cost = weights[k];
  return simplex_solve(m);
}

std::vector<ReferenceRow> reference_table(int example) {
  switch (example) {
    case 1:
      return {
          {"Proposed", {0.458, 12.710, 1.946}, {74.938, 54.699}, {0.963, 1.00}},
          {"Mohamed [36]", {0.348, 13.677, 1.549}, {68.894, 56.342}, {0.834, 0.928}},
          {"Model I [40]", {0.341, 13.782, 1.418}, {67.404, 56.191}, {0.801, 0.935}},
          {"Model II [40]", {0.315, 12.607, 2.334}, {75.950, 55.443}, {0.984, 0.968}},
      };
    case 2:
      return {
          {"Proposed", {1.051, 3.209, 1.697}, {279.275, 21.471}, {0.986, 0.935}},
          {"Mohamed [36]", {}, {263.617, 22.876}, {0.944, 0.795}},
          {"Model I [40]", {}, {257.515, 21.355}, {0.851, 0.947}},
          {"Model II [40]", {}, {280.011, 21.683}, {0.990, 0.914}},
      };
    default:
      throw Error(ErrorCode::invalid_argument, "no reference table for example " + std::to_string(example));
  }
}

void write_comparison_csv(const std::vector<ReferenceRow>& rows, std::ostream& out) {
  std::size_t n = 0, l = 0;
  for (const auto& r : rows) {
    n = std::max(n, r.x.size());
    l = std::max(l, std::max(r.f.size(), r.mu.size()));
  }
  out << "method";
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= l; ++i) out << ",f" << i;
  for (std::size_t i = 1; i <= l; ++i) out << ",mu" << i;
  out << '\n';
  auto cells = [&](const std::vector<double>& v, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      out << ',';
      if (i < v.size()) out << v[i];
    }
  };
  const auto precision = out.precision(12);
  for (const auto& r : rows) {
    std::string label = r.method;
    if (label.find(',') != std::string::npos) label = '"' + label + '"';
    out << label;
    cells(r.x, n);
    cells(r.f, l);
    cells(r.mu, l);
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace it2fgp
