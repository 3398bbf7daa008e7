#include "it2fgp/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "it2fgp/error.hpp"

namespace it2fgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCostTolerance = 1e-9;
constexpr double kFeasTolerance = 1e-9;
constexpr double kNoise = 1e-13;

void check_model(const LpModel& m) {
  for (const auto& c : m.columns) {
    if (!std::isfinite(c.lower) || std::isnan(c.upper) || c.upper < c.lower || !std::isfinite(c.cost)) {
      throw Error(ErrorCode::invalid_argument, "column " + c.name + " has invalid bounds or cost");
    }
  }
  for (const auto& r : m.rows) {
    if (r.coeffs.size() != m.columns.size()) {
      throw Error(ErrorCode::dimension, "row " + r.name + " has the wrong number of coefficients");
    }
    if (!std::isfinite(r.rhs)) throw Error(ErrorCode::invalid_argument, "row " + r.name + " has a non-finite rhs");
  }
}

void fill_layout(const LpModel& m, LpSolution& s) {
  if (!m.layout || s.status != LpStatus::optimal) return;
  const auto& L = *m.layout;
  s.x.assign(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(L.n));
  s.d_minus.assign(s.values.begin() + static_cast<std::ptrdiff_t>(L.d_minus),
                   s.values.begin() + static_cast<std::ptrdiff_t>(L.d_minus + L.goals));
  if (L.d_plus) {
    s.d_plus.assign(s.values.begin() + static_cast<std::ptrdiff_t>(*L.d_plus),
                    s.values.begin() + static_cast<std::ptrdiff_t>(*L.d_plus + L.goals));
  }
  if (L.beta) s.beta = s.values[*L.beta];
}

double objective_of(const LpModel& m, const std::vector<double>& v) {
  double z = 0.0;
  for (std::size_t j = 0; j < m.columns.size(); ++j) z += m.columns[j].cost * v[j];
  return z;
}

// Dense bounded-variable tableau. Columns: model columns, then one slack per
// inequality row, then one artificial per row.
class Tableau {
 public:
  explicit Tableau(const LpModel& m) : model_(m) {
    rows_ = m.rows.size();
    structural_ = m.columns.size();
    for (const auto& c : m.columns) {
      lower_.push_back(c.lower);
      upper_.push_back(c.upper);
    }
    std::vector<std::vector<double>> a(rows_);
    for (std::size_t i = 0; i < rows_; ++i) a[i] = m.rows[i].coeffs;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (m.rows[i].relation == Relation::equal) continue;
      const double sign = m.rows[i].relation == Relation::less_equal ? 1.0 : -1.0;
      for (std::size_t r = 0; r < rows_; ++r) a[r].push_back(r == i ? sign : 0.0);
      lower_.push_back(0.0);
      upper_.push_back(kInf);
    }
    slack_end_ = lower_.size();

    value_.assign(slack_end_, 0.0);
    for (std::size_t j = 0; j < slack_end_; ++j) value_[j] = lower_[j];
    // Rows are sign-normalized so that each artificial starts at |residual|
    // with a unit column, which makes the initial tableau its own B^-1 A.
    for (std::size_t i = 0; i < rows_; ++i) {
      double residual = m.rows[i].rhs;
      for (std::size_t j = 0; j < slack_end_; ++j) residual -= a[i][j] * value_[j];
      if (residual < 0.0) {
        for (auto& v : a[i]) v = -v;
      }
      for (std::size_t r = 0; r < rows_; ++r) a[r].push_back(r == i ? 1.0 : 0.0);
      lower_.push_back(0.0);
      upper_.push_back(kInf);
      value_.push_back(std::abs(residual));
      basis_.push_back(slack_end_ + i);
    }
    columns_ = lower_.size();
    t_ = std::move(a);
    basic_.assign(columns_, false);
    for (auto b : basis_) basic_[b] = true;
  }

  LpSolution solve() {
    std::vector<double> phase1(columns_, 0.0);
    for (std::size_t j = slack_end_; j < columns_; ++j) phase1[j] = 1.0;
    if (!iterate(phase1)) throw Error(ErrorCode::degenerate_pivot, "phase 1 reported unbounded");

    double infeasibility = 0.0;
    for (std::size_t j = slack_end_; j < columns_; ++j) infeasibility += value_[j];
    double scale = 1.0;
    for (const auto& r : model_.rows) scale = std::max(scale, std::abs(r.rhs));
    LpSolution out;
    out.pivots = pivots_;
    if (infeasibility > kFeasTolerance * scale) {
      out.status = LpStatus::infeasible;
      return out;
    }
    drive_out_artificials();
    for (std::size_t j = slack_end_; j < columns_; ++j) {
      upper_[j] = 0.0;
      value_[j] = 0.0;
    }

    std::vector<double> phase2(columns_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) phase2[j] = model_.columns[j].cost;
    const bool bounded = iterate(phase2);
    out.pivots = pivots_;
    if (!bounded) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.values.assign(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(structural_));
    for (std::size_t j = 0; j < structural_; ++j) {
      out.values[j] = std::clamp(out.values[j], lower_[j], upper_[j]);
    }
    out.objective = objective_of(model_, out.values);
    return out;
  }

 private:
  // Returns false when the objective is unbounded below.
  bool iterate(const std::vector<double>& cost) {
    while (true) {
      std::vector<double> dual(rows_, 0.0);
      for (std::size_t i = 0; i < rows_; ++i) dual[i] = cost[basis_[i]];
      std::size_t entering = columns_;
      double direction = 0.0;
      for (std::size_t j = 0; j < columns_; ++j) {
        if (basic_[j] || upper_[j] == lower_[j]) continue;
        double reduced = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) reduced -= dual[i] * t_[i][j];
        const bool at_lower = value_[j] <= lower_[j];
        if (at_lower && reduced < -kCostTolerance) {
          entering = j;
          direction = 1.0;
          break;
        }
        if (!at_lower && reduced > kCostTolerance) {
          entering = j;
          direction = -1.0;
          break;
        }
      }
      if (entering == columns_) return true;

      // Ratio test. Basic variable i moves by -direction * t * alpha_i.
      double best = upper_[entering] - lower_[entering];
      std::size_t leave_row = rows_;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double alpha = t_[i][entering];
        if (std::abs(alpha) <= kNoise) continue;
        const std::size_t b = basis_[i];
        const double rate = -direction * alpha;
        double limit = kInf;
        if (rate < 0.0) limit = (value_[b] - lower_[b]) / -rate;
        if (rate > 0.0 && std::isfinite(upper_[b])) limit = (upper_[b] - value_[b]) / rate;
        limit = std::max(limit, 0.0);
        if (limit < best || (limit == best && leave_row < rows_ && b < basis_[leave_row])) {
          best = limit;
          leave_row = i;
        }
      }
      if (!std::isfinite(best)) return false;

      for (std::size_t i = 0; i < rows_; ++i) {
        value_[basis_[i]] -= direction * best * t_[i][entering];
      }
      value_[entering] += direction * best;
      if (leave_row == rows_) {
        value_[entering] = direction > 0.0 ? upper_[entering] : lower_[entering];
        continue;
      }
      const std::size_t leaving = basis_[leave_row];
      const double rate = -direction * t_[leave_row][entering];
      value_[leaving] = rate < 0.0 ? lower_[leaving] : upper_[leaving];
      pivot(leave_row, entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    if (std::abs(p) < kPivotTolerance) {
      throw Error(ErrorCode::degenerate_pivot, "pivot element below tolerance");
    }
    for (auto& v : t_[row]) v /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < columns_; ++j) t_[i][j] -= f * t_[row][j];
      t_[i][col] = 0.0;
    }
    basic_[basis_[row]] = false;
    basis_[row] = col;
    basic_[col] = true;
    ++pivots_;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < slack_end_) continue;
      std::size_t col = slack_end_;
      for (std::size_t j = 0; j < slack_end_; ++j) {
        if (!basic_[j] && std::abs(t_[i][j]) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col == slack_end_) continue;  // redundant row
      pivot(i, col);
    }
  }

  const LpModel& model_;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t slack_end_ = 0;
  std::size_t columns_ = 0;
  std::vector<std::vector<double>> t_;
  std::vector<double> lower_, upper_, value_;
  std::vector<std::size_t> basis_;
  std::vector<bool> basic_;
  std::size_t pivots_ = 0;
};

std::string fit12(const std::string& s) {
  std::string out = s.size() > 11 ? s.substr(0, 11) : s;
  out.insert(0, 12 - out.size(), ' ');
  return out;
}

std::string num12(double v) {
  if (std::isinf(v)) return fit12(v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%12.6g", v);
  return fit12(buf);
}

}  // namespace

std::size_t LpModel::add_column(LpColumn column) {
  columns.push_back(std::move(column));
  for (auto& r : rows) r.coeffs.push_back(0.0);
  return columns.size() - 1;
}

std::size_t LpModel::add_row(LpRow row) {
  row.coeffs.resize(columns.size(), 0.0);
  rows.push_back(std::move(row));
  return rows.size() - 1;
}

LpModel assemble_fgp(const std::vector<LinearFn>& goals, const Box& box, const FgpOptions& options) {
  if (goals.empty()) throw Error(ErrorCode::structural, "no goals to assemble");
  const std::size_t n = box.dimension();
  if (box.upper.size() != n) throw Error(ErrorCode::dimension, "malformed box");
  for (std::size_t l = 0; l < n; ++l) {
    if (!std::isfinite(box.lower[l]) || !std::isfinite(box.upper[l]) || box.lower[l] > box.upper[l]) {
      throw Error(ErrorCode::invalid_argument, "box bounds must be finite and ordered");
    }
  }
  for (const auto& g : goals) {
    if (g.coeffs.size() != n) throw Error(ErrorCode::dimension, "goal dimension does not match the box");
  }
  const std::size_t K = goals.size();
  LpModel m;
  FgpLayout layout;
  layout.n = n;
  layout.goals = K;
  for (std::size_t l = 0; l < n; ++l) m.add_column({"x" + std::to_string(l + 1), box.lower[l], box.upper[l], 0.0});
  layout.d_minus = m.columns.size();
  for (std::size_t k = 0; k < K; ++k) m.add_column({"d" + std::to_string(k + 1) + "-", 0.0, kInf, 0.0});
  if (options.with_d_plus) {
    layout.d_plus = m.columns.size();
    for (std::size_t k = 0; k < K; ++k) m.add_column({"d" + std::to_string(k + 1) + "+", 0.0, kInf, 0.0});
  }
  layout.beta = m.add_column({"beta", 0.0, 1.0, 1.0});

  for (std::size_t k = 0; k < K; ++k) {
    LpRow row{"goal" + std::to_string(k + 1), {}, Relation::equal, 1.0 - goals[k].constant};
    row.coeffs.assign(m.columns.size(), 0.0);
    for (std::size_t l = 0; l < n; ++l) row.coeffs[l] = goals[k].coeffs[l];
    row.coeffs[layout.d_minus + k] = 1.0;
    if (layout.d_plus) row.coeffs[*layout.d_plus + k] = -1.0;
    m.add_row(std::move(row));
  }
  for (std::size_t k = 0; k < K; ++k) {
    LpRow row{"beta" + std::to_string(k + 1), {}, Relation::greater_equal, 0.0};
    row.coeffs.assign(m.columns.size(), 0.0);
    row.coeffs[*layout.beta] = 1.0;
    row.coeffs[layout.d_minus + k] = -1.0;
    m.add_row(std::move(row));
  }
  m.layout = layout;
  return m;
}

namespace {

NlpModel assemble_level_model(const std::vector<MembershipSpec>& specs, const CrispProgram& program,
                              bool maxmin) {
  if (specs.empty()) throw Error(ErrorCode::structural, "no goals to assemble");
  const std::size_t n = program.dimension();
  auto widen = [](std::vector<double> e) {
    e.push_back(0.0);
    return e;
  };
  NlpModel model;
  model.sense = maxmin ? Sense::maximize : Sense::minimize;
  auto& p = model.program;
  p.variables = program.variables;
  p.variables.push_back(maxmin ? "lambda" : "beta");
  std::vector<double> level(n + 1, 0.0);
  level[n] = 1.0;
  p.objectives.push_back({model.sense, CrispSignomial{{{1.0, level, 1}}}});
  for (const auto& c : program.constraints) {
    Constraint<double> w{{}, c.relation, c.rhs};
    for (const auto& t : c.fn.terms) w.fn.terms.push_back({t.coeff, widen(t.exponents), t.sign});
    p.constraints.push_back(std::move(w));
  }
  for (const auto& spec : specs) {
    if (spec.objective >= program.objectives.size()) {
      throw Error(ErrorCode::invalid_argument, "goal refers to a missing objective");
    }
    const auto mu = unclamped_membership(spec, program.objectives[spec.objective].fn);
    Constraint<double> row{{}, Relation::greater_equal, maxmin ? 0.0 : 1.0};
    for (const auto& t : mu.terms) {
      // constant terms move to the right-hand side
      if (std::all_of(t.exponents.begin(), t.exponents.end(), [](double e) { return e == 0.0; })) {
        row.rhs -= t.coeff * t.sign;
      } else {
        row.fn.terms.push_back({t.coeff * t.sign, widen(t.exponents), 1});
      }
    }
    row.fn.terms.push_back({maxmin ? -1.0 : 1.0, level, 1});
    p.constraints.push_back(std::move(row));
  }
  p.constraints.push_back({CrispSignomial{{{1.0, level, 1}}}, Relation::less_equal, 1.0});
  return model;
}

}  // namespace

NlpModel assemble_maxmin(const std::vector<MembershipSpec>& specs, const CrispProgram& program) {
  return assemble_level_model(specs, program, true);
}

NlpModel assemble_minmax(const std::vector<MembershipSpec>& specs, const CrispProgram& program) {
  return assemble_level_model(specs, program, false);
}

NlpResult solve_model(const NlpModel& model, const NlpConfig& config) {
  return solve_single(model.program, 0, model.sense, config);
}

LpSolution simplex_solve(const LpModel& model) {
  check_model(model);
  LpSolution s = Tableau(model).solve();
  fill_layout(model, s);
  return s;
}

LpSolution vertex_oracle(const LpModel& model) {
  check_model(model);
  if (model.columns.size() > kVertexOracleLimit) {
    throw Error(ErrorCode::unsupported, "vertex oracle is limited to " +
                                            std::to_string(kVertexOracleLimit) + " columns");
  }
  // Standard form with slacks; every column has a finite lower bound.
  const std::size_t m = model.rows.size();
  std::vector<double> lo, hi;
  for (const auto& c : model.columns) {
    lo.push_back(c.lower);
    hi.push_back(c.upper);
  }
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    std::vector<double> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = model.rows[i].coeffs[j];
    cols.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (model.rows[i].relation == Relation::equal) continue;
    std::vector<double> c(m, 0.0);
    c[i] = model.rows[i].relation == Relation::less_equal ? 1.0 : -1.0;
    cols.push_back(std::move(c));
    lo.push_back(0.0);
    hi.push_back(kInf);
  }
  const std::size_t N = cols.size();
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) b(static_cast<Eigen::Index>(i)) = model.rows[i].rhs;

  LpSolution best;
  best.status = LpStatus::infeasible;
  double best_obj = kInf;
  std::vector<double> best_values;

  auto consider = [&](const std::vector<double>& v) {
    for (std::size_t j = 0; j < N; ++j) {
      if (v[j] < lo[j] - kFeasTolerance || v[j] > hi[j] + kFeasTolerance) return;
    }
    std::vector<double> structural(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(model.columns.size()));
    const double z = objective_of(model, structural);
    if (z < best_obj - 1e-12 || (std::abs(z - best_obj) <= 1e-12 && structural < best_values)) {
      best_obj = z;
      best_values = structural;
    }
  };

  const std::size_t basis_size = std::min(m, N);
  std::vector<bool> chosen(N, false);
  std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(basis_size), true);
  std::sort(chosen.begin(), chosen.end());
  do {
    std::vector<std::size_t> basic, nonbasic;
    for (std::size_t j = 0; j < N; ++j) (chosen[j] ? basic : nonbasic).push_back(j);
    Eigen::MatrixXd B(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(basic.size()));
    for (std::size_t k = 0; k < basic.size(); ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cols[basic[k]][i];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (static_cast<std::size_t>(lu.rank()) < basic.size()) continue;

    // every nonbasic column at one of its finite bounds
    std::vector<std::size_t> choices;
    for (auto j : nonbasic) choices.push_back(std::isfinite(hi[j]) && hi[j] != lo[j] ? 2 : 1);
    std::vector<std::size_t> pick(nonbasic.size(), 0);
    while (true) {
      std::vector<double> v(N, 0.0);
      Eigen::VectorXd r = b;
      for (std::size_t k = 0; k < nonbasic.size(); ++k) {
        const std::size_t j = nonbasic[k];
        v[j] = pick[k] == 0 ? lo[j] : hi[j];
        for (std::size_t i = 0; i < m; ++i) r(static_cast<Eigen::Index>(i)) -= cols[j][i] * v[j];
      }
      const Eigen::VectorXd xb = lu.solve(r);
      if ((B * xb - r).norm() <= 1e-9 * (1.0 + r.norm())) {
        for (std::size_t k = 0; k < basic.size(); ++k) v[basic[k]] = xb(static_cast<Eigen::Index>(k));
        consider(v);
      }
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == choices[k]) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  } while (std::next_permutation(chosen.begin(), chosen.end()));

  if (!best_values.empty()) {
    best.status = LpStatus::optimal;
    best.values = std::move(best_values);
    for (std::size_t j = 0; j < best.values.size(); ++j) {
      best.values[j] = std::clamp(best.values[j], model.columns[j].lower, model.columns[j].upper);
    }
    best.objective = objective_of(model, best.values);
  }
  fill_layout(model, best);
  return best;
}

double lp_violation(const LpModel& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < model.columns.size(); ++j) {
    worst = std::max(worst, model.columns[j].lower - values[j]);
    worst = std::max(worst, values[j] - model.columns[j].upper);
  }
  for (const auto& r : model.rows) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < model.columns.size(); ++j) lhs += r.coeffs[j] * values[j];
    switch (r.relation) {
      case Relation::less_equal: worst = std::max(worst, lhs - r.rhs); break;
      case Relation::greater_equal: worst = std::max(worst, r.rhs - lhs); break;
      case Relation::equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
    }
  }
  return worst;
}

void dump_lp(const LpModel& model, std::ostream& out) {
  out << fit12("");
  for (const auto& c : model.columns) out << fit12(c.name);
  out << fit12("rel") << fit12("rhs") << '\n';
  out << fit12("min");
  for (const auto& c : model.columns) out << num12(c.cost);
  out << '\n';
  for (const auto& r : model.rows) {
    out << fit12(r.name);
    for (double v : r.coeffs) out << num12(v);
    const char* rel = r.relation == Relation::less_equal ? "<=" : r.relation == Relation::greater_equal ? ">=" : "=";
    out << fit12(rel) << num12(r.rhs) << '\n';
  }
  out << fit12("lower");
  for (const auto& c : model.columns) out << num12(c.lower);
  out << '\n' << fit12("upper");
  for (const auto& c : model.columns) out << num12(c.upper);
  out << '\n';
}

}  // namespace it2fgp
