#include "it2fgp/nlpcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "it2fgp/error.hpp"

namespace it2fgp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;

std::string sense_name(Sense s) {
  return s == Sense::maximize ? "maximize" : "minimize";
}

// ---------------------------------------------------------------------------
// Problem view shared by the constrained and the box-only searches. All
// quantities are expressed for minimization of `sigma * f`.

struct ScaledConstraint {
  const CrispSignomial* fn = nullptr;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  double scale = 1.0;
};

struct SearchProblem {
  std::function<double(std::span<const double>)> value;
  std::function<Point(std::span<const double>, const std::vector<bool>&)> gradient;
  double sigma = 1.0;
  std::vector<ScaledConstraint> constraints;
  Point lower;
  Point upper;

  std::size_t dimension() const { return lower.size(); }
};

double residual(const ScaledConstraint& c, std::span<const double> x) {
  return (eval_fn(*c.fn, x) - c.rhs) / c.scale;
}

// Positive part of the residual in the violating direction.
double violation_of(const ScaledConstraint& c, double r) {
  switch (c.relation) {
    case Relation::less_equal: return std::max(0.0, r);
    case Relation::greater_equal: return std::max(0.0, -r);
    case Relation::equal: return std::abs(r);
  }
  return 0.0;
}

double max_violation(const SearchProblem& p, std::span<const double> x) {
  double v = 0.0;
  for (const auto& c : p.constraints) v = std::max(v, violation_of(c, residual(c, x)));
  return v;
}

double penalized(const SearchProblem& p, std::span<const double> x, double rho) {
  try {
    double phi = p.sigma * p.value(x);
    for (const auto& c : p.constraints) {
      const double v = violation_of(c, residual(c, x));
      phi += rho * v * v;
    }
    return std::isfinite(phi) ? phi : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

void clamp_into(Point& x, const Point& lo, const Point& hi) {
  for (std::size_t l = 0; l < x.size(); ++l) x[l] = std::clamp(x[l], lo[l], hi[l]);
}

// ---------------------------------------------------------------------------
// Nelder-Mead on the penalized function; every trial vertex is projected onto
// the search box.

struct SimplexSearch {
  Point x;
  double value = kInf;
  std::size_t iterations = 0;
};

SimplexSearch nelder_mead(const std::function<double(std::span<const double>)>& fn,
                          Point start, const Point& lo, const Point& hi,
                          std::size_t max_iterations, double tolerance) {
  const std::size_t n = start.size();
  clamp_into(start, lo, hi);
  std::vector<Point> vertices(n + 1, start);
  std::vector<double> values(n + 1);
  for (std::size_t l = 0; l < n; ++l) {
    const double range = hi[l] - lo[l];
    double step = std::isfinite(range) && range > 0.0 ? 0.1 * range : 0.1 * (1.0 + std::abs(start[l]));
    if (start[l] + step > hi[l]) step = -step;
    vertices[l + 1][l] += step;
    clamp_into(vertices[l + 1], lo, hi);
  }
  for (std::size_t i = 0; i <= n; ++i) values[i] = fn(vertices[i]);

  std::vector<std::size_t> order(n + 1);
  std::size_t it = 0;
  auto make = [&](const Point& centroid, const Point& worst, double coef) {
    Point p(n);
    for (std::size_t l = 0; l < n; ++l) p[l] = centroid[l] + coef * (worst[l] - centroid[l]);
    clamp_into(p, lo, hi);
    return p;
  };

  for (; it < max_iterations; ++it) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (std::isfinite(values[i]) && std::isfinite(values[best])) {
        fspread = std::max(fspread, std::abs(values[i] - values[best]));
      } else if (i != best) {
        fspread = kInf;
      }
      for (std::size_t l = 0; l < n; ++l) {
        xspread = std::max(xspread, std::abs(vertices[i][l] - vertices[best][l]));
      }
    }
    const double fscale = std::isfinite(values[best]) ? 1.0 + std::abs(values[best]) : 1.0;
    if (fspread <= tolerance * fscale && xspread <= tolerance) break;
    if (xspread <= 1e-14) break;

    Point centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t l = 0; l < n; ++l) centroid[l] += vertices[i][l] / static_cast<double>(n);
    }
    const Point reflected = make(centroid, vertices[worst], -1.0);
    const double fr = fn(reflected);
    if (fr < values[best]) {
      const Point expanded = make(centroid, vertices[worst], -2.0);
      const double fe = fn(expanded);
      if (fe < fr) {
        vertices[worst] = expanded;
        values[worst] = fe;
      } else {
        vertices[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      vertices[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Point contracted = make(centroid, vertices[worst], outside ? -0.5 : 0.5);
    const double fc = fn(contracted);
    if (fc < (outside ? fr : values[worst])) {
      vertices[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t l = 0; l < n; ++l) {
        vertices[i][l] = vertices[best][l] + 0.5 * (vertices[i][l] - vertices[best][l]);
      }
      values[i] = fn(vertices[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {vertices[best], values[best], it};
}

// ---------------------------------------------------------------------------
// Gradient-projection polish. Active constraints are held as equalities by a
// minimum-norm Gauss-Newton restoration; variables sitting on a bound stay
// fixed.

class Polisher {
 public:
  explicit Polisher(const SearchProblem& p) : p_(p) {}

  std::size_t run(Point& x, std::size_t max_iterations) {
    const std::size_t m = p_.constraints.size();
    std::vector<bool> active(m, false);
    refresh_active(x, active);
    if (!restore(x, active)) return 0;

    double step = 1.0;
    std::size_t it = 0;
    for (; it < max_iterations; ++it) {
      const auto free = free_mask(x);
      const auto idx = indices(free);
      if (idx.empty()) break;

      const Point full_g = p_.gradient(x, free);
      Eigen::VectorXd g(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) g(static_cast<Eigen::Index>(i)) = p_.sigma * full_g[idx[i]];

      Eigen::VectorXd d;
      bool dropped = true;
      while (dropped) {
        dropped = false;
        const auto rows = active_rows(active);
        if (rows.empty()) {
          d = -g;
          break;
        }
        const Eigen::MatrixXd jac = jacobian(x, rows, free, idx);
        const Eigen::VectorXd lambda = jac.transpose().completeOrthogonalDecomposition().solve(g);
        d = -(g - jac.transpose() * lambda);
        if (d.norm() > 1e-9 * (1.0 + g.norm())) break;
        // Stationary on the current face: release the worst wrong-signed row.
        double worst = 1e-10 * (1.0 + g.norm());
        std::size_t release = m;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto& c = p_.constraints[rows[r]];
          const double lam = lambda(static_cast<Eigen::Index>(r));
          double wrong = 0.0;
          if (c.relation == Relation::less_equal) wrong = lam;
          if (c.relation == Relation::greater_equal) wrong = -lam;
          if (wrong > worst) {
            worst = wrong;
            release = rows[r];
          }
        }
        if (release < m) {
          active[release] = false;
          dropped = true;
        }
      }
      if (d.norm() <= 1e-9 * (1.0 + g.norm())) break;

      double t_bound = kInf;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        const std::size_t l = idx[i];
        const double dl = d(static_cast<Eigen::Index>(i));
        if (dl < 0.0) t_bound = std::min(t_bound, (x[l] - p_.lower[l]) / -dl);
        if (dl > 0.0) t_bound = std::min(t_bound, (p_.upper[l] - x[l]) / dl);
      }
      const double phi0 = objective(x);
      double t = std::min(step * 4.0, t_bound);
      bool accepted = false;
      for (int bt = 0; bt < 60 && t > 0.0; ++bt, t *= 0.5) {
        Point trial = x;
        for (std::size_t i = 0; i < idx.size(); ++i) trial[idx[i]] += t * d(static_cast<Eigen::Index>(i));
        if (t == t_bound) {
          for (std::size_t i = 0; i < idx.size(); ++i) {
            const std::size_t l = idx[i];
            const double dl = d(static_cast<Eigen::Index>(i));
            if (dl < 0.0 && (x[l] - p_.lower[l]) / -dl <= t) trial[l] = p_.lower[l];
            if (dl > 0.0 && (p_.upper[l] - x[l]) / dl <= t) trial[l] = p_.upper[l];
          }
        }
        clamp_into(trial, p_.lower, p_.upper);
        std::vector<bool> trial_active = active;
        if (!restore(trial, trial_active)) continue;
        const double phi = objective(trial);
        if (phi < phi0 - 1e-4 * t * d.squaredNorm()) {
          x = std::move(trial);
          active = std::move(trial_active);
          refresh_active(x, active);
          step = t;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    return it;
  }

 private:
  double objective(std::span<const double> x) const { return p_.sigma * p_.value(x); }

  std::vector<bool> free_mask(const Point& x) const {
    std::vector<bool> free(x.size());
    for (std::size_t l = 0; l < x.size(); ++l) free[l] = x[l] > p_.lower[l] && x[l] < p_.upper[l];
    return free;
  }

  static std::vector<std::size_t> indices(const std::vector<bool>& mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) out.push_back(i);
    }
    return out;
  }

  static std::vector<std::size_t> active_rows(const std::vector<bool>& active) {
    return indices(active);
  }

  void refresh_active(const Point& x, std::vector<bool>& active) const {
    for (std::size_t j = 0; j < p_.constraints.size(); ++j) {
      const auto& c = p_.constraints[j];
      const double r = residual(c, x);
      if (c.relation == Relation::equal || std::abs(r) <= 1e-9 || violation_of(c, r) > 0.0) {
        active[j] = true;
      }
    }
  }

  Eigen::MatrixXd jacobian(const Point& x, const std::vector<std::size_t>& rows,
                           const std::vector<bool>& free,
                           const std::vector<std::size_t>& idx) const {
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& c = p_.constraints[rows[r]];
      const Point g = grad_fn_partial(*c.fn, x, free);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = g[idx[i]] / c.scale;
      }
    }
    return jac;
  }

  // Pulls active rows onto their boundary and violated rows back to it.
  bool restore(Point& x, std::vector<bool>& active) const {
    for (int it = 0; it < 40; ++it) {
      std::vector<std::size_t> rows;
      std::vector<double> res;
      double worst = 0.0;
      for (std::size_t j = 0; j < p_.constraints.size(); ++j) {
        const auto& c = p_.constraints[j];
        const double r = residual(c, x);
        if (active[j] || violation_of(c, r) > 0.0) {
          if (!active[j]) active[j] = true;
          rows.push_back(j);
          res.push_back(r);
          worst = std::max(worst, std::abs(r));
        }
      }
      if (worst <= 1e-13) return true;
      const auto free = free_mask(x);
      const auto idx = indices(free);
      if (idx.empty()) return worst <= 1e-10;
      const Eigen::MatrixXd jac = jacobian(x, rows, free, idx);
      Eigen::VectorXd rhs(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) rhs(static_cast<Eigen::Index>(r)) = -res[r];
      const Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(rhs);
      if (!delta.allFinite()) return false;
      for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]] += delta(static_cast<Eigen::Index>(i));
      clamp_into(x, p_.lower, p_.upper);
    }
    return max_violation(p_, x) <= 1e-10;
  }

  const SearchProblem& p_;
};

// ---------------------------------------------------------------------------
// Restart points: shifted Halton sequence, shift drawn from the seed.

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double factor = inv;
  double out = 0.0;
  while (index > 0) {
    out += static_cast<double>(index % base) * factor;
    index /= base;
    factor *= inv;
  }
  return out;
}

std::vector<Point> restart_points(const Point& lo, const Point& hi, std::size_t count,
                                  std::uint64_t seed) {
  const std::size_t n = lo.size();
  const auto primes = first_primes(n);
  std::mt19937_64 rng(seed);
  Point shift(n);
  for (auto& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point p(n);
    for (std::size_t l = 0; l < n; ++l) {
      double u = radical_inverse(i + 1, primes[l]) + shift[l];
      u -= std::floor(u);
      p[l] = lo[l] + u * (hi[l] - lo[l]);
    }
    points.push_back(std::move(p));
  }
  return points;
}

struct RestartOutcome {
  Point x;
  double value = kInf;   // sigma * f, i.e. minimized value
  double violation = kInf;
  std::size_t iterations = 0;
};

RestartOutcome run_restart(const SearchProblem& p, const Point& start,
                           const NlpConfig& cfg) {
  RestartOutcome out;
  Point x = start;
  std::size_t iterations = 0;
  if (p.constraints.empty()) {
    auto fn = [&](std::span<const double> y) { return penalized(p, y, 0.0); };
    for (int pass = 0; pass < 2; ++pass) {
      auto r = nelder_mead(fn, x, p.lower, p.upper, cfg.max_iterations, cfg.tolerance);
      x = std::move(r.x);
      iterations += r.iterations;
    }
  } else {
    for (double rho : cfg.penalty_schedule) {
      auto fn = [&](std::span<const double> y) { return penalized(p, y, rho); };
      for (int pass = 0; pass < 2; ++pass) {
        auto r = nelder_mead(fn, x, p.lower, p.upper, cfg.max_iterations, cfg.tolerance);
        x = std::move(r.x);
        iterations += r.iterations;
      }
    }
  }
  try {
    Point polished = x;
    iterations += Polisher(p).run(polished, 200);
    const double before = max_violation(p, x);
    const double after = max_violation(p, polished);
    const double fb = penalized(p, x, 0.0);
    const double fa = penalized(p, polished, 0.0);
    if (after <= cfg.feasibility_tolerance &&
        (before > cfg.feasibility_tolerance || fa <= fb)) {
      x = std::move(polished);
    } else if (after < before && before > cfg.feasibility_tolerance) {
      x = std::move(polished);
    }
  } catch (const Error&) {
    // keep the derivative-free result
  }
  out.x = std::move(x);
  try {
    out.value = p.sigma * p.value(out.x);
    out.violation = max_violation(p, out.x);
  } catch (const Error&) {
    out.value = kInf;
    out.violation = kInf;
  }
  out.iterations = iterations;
  return out;
}

std::vector<RestartOutcome> run_restarts(const SearchProblem& p, const std::vector<Point>& starts,
                                         const NlpConfig& cfg) {
  std::vector<RestartOutcome> outcomes(starts.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, starts.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) outcomes[i] = run_restart(p, starts[i], cfg);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < starts.size(); i = next++) {
        outcomes[i] = run_restart(p, starts[i], cfg);
      }
    });
  }
  for (auto& t : pool) t.join();
  return outcomes;
}

// Ordered reduction: better value wins; near-ties go to the lexicographically
// smaller point.
std::size_t pick_best(const std::vector<RestartOutcome>& outcomes, double feas_tol) {
  std::size_t best = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!(o.violation <= feas_tol) || !std::isfinite(o.value)) continue;
    if (best == outcomes.size()) {
      best = i;
      continue;
    }
    const auto& b = outcomes[best];
    const double tie = 1e-9 * (1.0 + std::abs(b.value));
    if (o.value < b.value - tie ||
        (std::abs(o.value - b.value) <= tie && o.x < b.x)) {
      best = i;
    }
  }
  return best;
}

NlpResult finish(const SearchProblem& p, const std::vector<Point>& starts,
                 const std::vector<RestartOutcome>& outcomes, const NlpConfig& cfg,
                 const std::string& what) {
  NlpResult result;
  result.search_upper = p.upper;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.log.push_back({i, starts[i], outcomes[i].iterations, p.sigma * outcomes[i].value,
                          outcomes[i].violation});
  }
  const std::size_t best = pick_best(outcomes, cfg.feasibility_tolerance);
  if (best == outcomes.size()) {
    std::size_t closest = outcomes.size();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (closest == outcomes.size() || outcomes[i].violation < outcomes[closest].violation) closest = i;
    }
    if (closest < outcomes.size() && outcomes[closest].violation <= 1e-3) {
      throw Error(ErrorCode::non_convergence,
                  what + ": best restart still violates constraints by " +
                      std::to_string(outcomes[closest].violation))
          .with_best_point(outcomes[closest].x);
    }
    throw Error(ErrorCode::infeasible_or_unbounded, what + ": no feasible point found");
  }
  result.x = outcomes[best].x;
  result.value = p.sigma * outcomes[best].value;
  result.violation = outcomes[best].violation;
  return result;
}

Point search_upper_bounds(const CrispProgram& program, const NlpConfig& cfg,
                          std::vector<bool>& implied) {
  const std::size_t n = program.dimension();
  implied.assign(n, false);
  if (cfg.upper_guess) {
    if (cfg.upper_guess->size() != n) {
      throw Error(ErrorCode::dimension, "upper_guess has wrong length");
    }
    implied.assign(n, true);
    return *cfg.upper_guess;
  }
  auto bounds = implied_upper_bounds(program);
  double largest = 0.0;
  for (const auto& c : program.constraints) largest = std::max(largest, std::abs(c.rhs));
  const double fallback = 10.0 * std::max(largest, 1.0);
  for (std::size_t l = 0; l < n; ++l) {
    if (std::isfinite(bounds[l])) {
      implied[l] = true;
    } else {
      bounds[l] = fallback;
    }
  }
  return bounds;
}

void check_program_shape(const CrispProgram& program, std::size_t objective) {
  if (objective >= program.objectives.size()) {
    throw Error(ErrorCode::invalid_argument, "objective index out of range");
  }
  const auto report = validate_program(program);
  if (!report.ok()) {
    for (const auto& issue : report.issues) {
      if (issue.severity == Severity::error) {
        throw Error(issue.code == "dimension" ? ErrorCode::dimension : ErrorCode::structural,
                    issue.path + ": " + issue.message);
      }
    }
  }
}

SearchProblem signomial_problem(const CrispSignomial& fn, Sense sense) {
  SearchProblem p;
  p.value = [&fn](std::span<const double> x) { return eval_fn(fn, x); };
  p.gradient = [&fn](std::span<const double> x, const std::vector<bool>& free) {
    return grad_fn_partial(fn, x, free);
  };
  p.sigma = sense == Sense::maximize ? -1.0 : 1.0;
  return p;
}

}  // namespace

bool Box::contains(std::span<const double> x, double tol) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] < lower[l] - tol || x[l] > upper[l] + tol) return false;
  }
  return true;
}

NlpResult solve_single(const CrispProgram& program, std::size_t objective, Sense sense,
                       const NlpConfig& config) {
  if (config.restarts == 0) throw Error(ErrorCode::invalid_argument, "restarts must be >= 1");
  if (!(config.tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be > 0");
  check_program_shape(program, objective);

  const std::size_t n = program.dimension();
  std::vector<bool> implied;
  SearchProblem p = signomial_problem(program.objectives[objective].fn, sense);
  p.lower.assign(n, 0.0);
  p.upper = search_upper_bounds(program, config, implied);
  for (const auto& c : program.constraints) {
    p.constraints.push_back({&c.fn, c.relation, c.rhs, 1.0 + std::abs(c.rhs)});
  }

  const auto starts = restart_points(p.lower, p.upper, config.restarts, config.seed);
  const auto outcomes = run_restarts(p, starts, config);
  const std::string what = "objective " + std::to_string(objective) + " (" + sense_name(sense) + ")";
  NlpResult result = finish(p, starts, outcomes, config, what);

  for (std::size_t l = 0; l < n; ++l) {
    if (!implied[l] && result.x[l] >= p.upper[l] * (1.0 - 1e-6)) {
      throw Error(ErrorCode::infeasible_or_unbounded,
                  what + ": optimum rests on the search bound of " + program.variables[l] +
                      "; the problem looks unbounded")
          .with_best_point(result.x);
    }
  }
  return result;
}

PayoffTable payoff_table(const CrispProgram& program, const NlpConfig& config) {
  PayoffTable table;
  auto entry = [&](std::size_t k, Sense s) {
    try {
      auto r = solve_single(program, k, s, config);
      PayoffEntry e;
      e.value = r.value;
      for (const auto& obj : program.objectives) e.objective_values.push_back(eval_fn(obj.fn, r.x));
      e.x = std::move(r.x);
      e.search_upper = std::move(r.search_upper);
      e.log = std::move(r.log);
      return e;
    } catch (Error& err) {
      Error tagged(err.code(), std::string("payoff f") + std::to_string(k + 1) + " " +
                                   sense_name(s) + ": " + err.what());
      if (err.index()) tagged.with_index(*err.index());
      if (err.best_point()) tagged.with_best_point(*err.best_point());
      throw tagged;
    }
  };
  for (std::size_t k = 0; k < program.objectives.size(); ++k) {
    PayoffRow row;
    row.sense = program.objectives[k].sense;
    row.max = entry(k, Sense::maximize);
    row.min = entry(k, Sense::minimize);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Box variable_box(const PayoffTable& table) {
  if (table.rows.empty()) throw Error(ErrorCode::invalid_argument, "empty payoff table");
  const std::size_t n = table.rows.front().max.x.size();
  Box box{Point(n, kInf), Point(n, -kInf)};
  for (const auto& row : table.rows) {
    for (const auto* e : {&row.max, &row.min}) {
      for (std::size_t l = 0; l < n; ++l) {
        box.lower[l] = std::min(box.lower[l], e->x[l]);
        box.upper[l] = std::max(box.upper[l], e->x[l]);
      }
    }
  }
  return box;
}

GridResult grid_oracle(const CrispProgram& program, std::size_t objective, Sense sense,
                       const GridOptions& options) {
  const std::size_t n = program.dimension();
  if (n > 4) throw Error(ErrorCode::unsupported, "grid oracle supports at most 4 variables");
  if (options.resolution < 2) throw Error(ErrorCode::invalid_argument, "resolution must be >= 2");
  check_program_shape(program, objective);

  Box bounds;
  if (options.bounds) {
    bounds = *options.bounds;
  } else {
    bounds.lower.assign(n, 0.0);
    bounds.upper = implied_upper_bounds(program);
    for (double u : bounds.upper) {
      if (!std::isfinite(u)) {
        throw Error(ErrorCode::unsupported, "grid oracle needs finite bounds for every variable");
      }
    }
  }
  const std::size_t r = options.resolution;
  GridResult result;
  result.spacing.resize(n);
  std::vector<Point> axis(n, Point(r));
  for (std::size_t l = 0; l < n; ++l) {
    result.spacing[l] = (bounds.upper[l] - bounds.lower[l]) / static_cast<double>(r - 1);
    for (std::size_t i = 0; i < r; ++i) {
      axis[l][i] = i + 1 == r ? bounds.upper[l] : bounds.lower[l] + result.spacing[l] * static_cast<double>(i);
    }
  }

  // Per-term, per-axis power tables so that each grid point costs only
  // multiplications.
  struct Tabled {
    std::vector<double> coeff;
    std::vector<std::vector<Point>> powers;  // [term][variable][grid index]
  };
  auto tabulate = [&](const CrispSignomial& fn) {
    Tabled t;
    for (const auto& term : fn.terms) {
      t.coeff.push_back(term.coeff * term.sign);
      std::vector<Point> per_var(n, Point(r));
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < r; ++i) {
          const double e = term.exponents[l];
          const double base = axis[l][i];
          per_var[l][i] = e == 0.0 ? 1.0 : (base == 0.0 ? (e > 0.0 ? 0.0 : kInf) : std::pow(base, e));
        }
      }
      t.powers.push_back(std::move(per_var));
    }
    return t;
  };
  auto eval_tabled = [&](const Tabled& t, const std::vector<std::size_t>& at) {
    double v = 0.0;
    for (std::size_t k = 0; k < t.coeff.size(); ++k) {
      double prod = t.coeff[k];
      for (std::size_t l = 0; l < n; ++l) prod *= t.powers[k][l][at[l]];
      v += prod;
    }
    return v;
  };

  const Tabled obj = tabulate(program.objectives[objective].fn);
  std::vector<Tabled> cons;
  for (const auto& c : program.constraints) cons.push_back(tabulate(c.fn));

  const double sigma = sense == Sense::maximize ? -1.0 : 1.0;
  double best = kInf;
  std::vector<std::size_t> at(n, 0);
  std::vector<std::size_t> best_at;
  while (true) {
    bool feasible = true;
    for (std::size_t j = 0; j < cons.size() && feasible; ++j) {
      const auto& c = program.constraints[j];
      const double g = eval_tabled(cons[j], at);
      const double scale = 1.0 + std::abs(c.rhs);
      switch (c.relation) {
        case Relation::less_equal: feasible = g <= c.rhs; break;
        case Relation::greater_equal: feasible = g >= c.rhs; break;
        case Relation::equal: feasible = std::abs(g - c.rhs) <= options.equality_tolerance * scale; break;
      }
    }
    if (feasible) {
      const double v = sigma * eval_tabled(obj, at);
      if (v < best) {
        best = v;
        best_at = at;
      }
    }
    std::size_t l = 0;
    while (l < n && ++at[l] == r) at[l++] = 0;
    if (l == n) break;
  }
  if (best_at.empty()) throw Error(ErrorCode::infeasible_or_unbounded, "no feasible grid point");
  result.x.resize(n);
  for (std::size_t l = 0; l < n; ++l) result.x[l] = axis[l][best_at[l]];
  result.value = sigma * best;
  return result;
}

NlpResult maximize_over_box(const CrispSignomial& fn, Sense sense, const Box& box,
                            const NlpConfig& config) {
  if (box.lower.size() != box.upper.size()) throw Error(ErrorCode::dimension, "malformed box");
  for (std::size_t l = 0; l < box.lower.size(); ++l) {
    if (!(box.lower[l] <= box.upper[l])) throw Error(ErrorCode::invalid_argument, "box lower exceeds upper");
  }
  SearchProblem p = signomial_problem(fn, sense);
  p.lower = box.lower;
  p.upper = box.upper;
  const auto starts = restart_points(p.lower, p.upper, config.restarts, config.seed);
  const auto outcomes = run_restarts(p, starts, config);
  return finish(p, starts, outcomes, config, "box search");
}

NlpResult maximize_over_box(const LinearFn& fn, Sense sense, const Box& box, const NlpConfig&) {
  if (fn.coeffs.size() != box.lower.size()) throw Error(ErrorCode::dimension, "box/function dimension mismatch");
  NlpResult r;
  r.x.resize(fn.coeffs.size());
  for (std::size_t l = 0; l < fn.coeffs.size(); ++l) {
    const double c = sense == Sense::maximize ? fn.coeffs[l] : -fn.coeffs[l];
    r.x[l] = c > 0.0 ? box.upper[l] : box.lower[l];
  }
  r.value = fn(r.x);
  r.search_upper = box.upper;
  return r;
}

}  // namespace it2fgp
