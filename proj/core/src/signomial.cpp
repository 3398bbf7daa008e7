#include "it2fgp/signomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "it2fgp/error.hpp"

namespace it2fgp {

namespace {

double pow_checked(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  if (base == 0.0) {
    if (exponent > 0.0) return 0.0;
    throw Error(ErrorCode::domain, "zero raised to a negative exponent");
  }
  if (base < 0.0 && std::trunc(exponent) != exponent) {
    throw Error(ErrorCode::domain,
                "negative base raised to a non-integer exponent");
  }
  return std::pow(base, exponent);
}

void check_dimension(const std::vector<double>& exponents, std::size_t n) {
  if (exponents.size() != n) {
    throw Error(ErrorCode::dimension,
                "term has " + std::to_string(exponents.size()) +
                    " exponents, point has " + std::to_string(n));
  }
}

double crisp_coefficient(const It2Number& c, int sign) {
  return sign * expected_value(c);
}

template <class Coeff>
Signomial<double> defuzzify_fn(const Signomial<Coeff>& fn) {
  Signomial<double> out;
  out.terms.reserve(fn.terms.size());
  for (const auto& t : fn.terms) {
    out.terms.push_back({crisp_coefficient(t.coeff, t.sign), t.exponents, 1});
  }
  return out;
}

double coefficient_value(double c) { return c; }
double coefficient_value(const It2Number& c) { return expected_value(c); }

bool finite_coefficient(double c) { return std::isfinite(c); }
bool finite_coefficient(const It2Number&) { return true; }  // checked at construction

template <class Coeff>
void validate_fn(const Signomial<Coeff>& fn, std::size_t n,
                 const std::string& path, ValidationReport& report) {
  if (fn.terms.empty()) {
    report.fail("structural", path, "signomial has no terms");
  }
  for (std::size_t i = 0; i < fn.terms.size(); ++i) {
    const auto& t = fn.terms[i];
    const std::string tp = path + ".terms[" + std::to_string(i) + "]";
    if (t.exponents.size() != n) {
      report.fail("dimension", tp,
                  "exponent vector has length " +
                      std::to_string(t.exponents.size()) + ", expected " +
                      std::to_string(n));
    }
    for (double e : t.exponents) {
      if (!std::isfinite(e)) {
        report.fail("invalid-number", tp, "non-finite exponent");
        break;
      }
    }
    if (!finite_coefficient(t.coeff)) {
      report.fail("invalid-number", tp, "non-finite coefficient");
    }
    if (t.sign != 1 && t.sign != -1) {
      report.fail("invalid-number", tp, "term sign must be +1 or -1");
    }
  }
}

void check_ordering(const It2Number& c, const std::string& path,
                    ValidationReport& report) {
  ValidationReport local;
  make_it2(c.upper(), c.lower(), &local, false);
  for (auto& issue : local.issues) {
    issue.path = path;
    report.issues.push_back(std::move(issue));
  }
}

template <class Coeff>
void collect_orderings(const Program<Coeff>& p, ValidationReport& report) {
  if constexpr (std::is_same_v<Coeff, It2Number>) {
    auto visit_fn = [&](const Signomial<It2Number>& fn, const std::string& path) {
      for (std::size_t i = 0; i < fn.terms.size(); ++i) {
        check_ordering(fn.terms[i].coeff,
                       path + ".terms[" + std::to_string(i) + "].coeff", report);
      }
    };
    for (std::size_t k = 0; k < p.objectives.size(); ++k) {
      visit_fn(p.objectives[k].fn, "objectives[" + std::to_string(k) + "]");
    }
    for (std::size_t j = 0; j < p.constraints.size(); ++j) {
      const std::string path = "constraints[" + std::to_string(j) + "]";
      visit_fn(p.constraints[j].fn, path);
      check_ordering(p.constraints[j].rhs, path + ".rhs", report);
    }
  }
}

template <class Coeff>
ValidationReport validate_impl(const Program<Coeff>& p) {
  ValidationReport report;
  const std::size_t n = p.dimension();
  if (n == 0) report.fail("structural", "variables", "program has no variables");
  if (p.objectives.empty()) {
    report.fail("structural", "objectives", "program has no objectives");
  } else if (p.objectives.size() == 1) {
    report.warn("single-objective", "objectives",
                "only one objective; the program is not multiobjective");
  }
  if (p.constraints.empty()) {
    report.fail("structural", "constraints", "program has no constraints");
  }
  for (std::size_t k = 0; k < p.objectives.size(); ++k) {
    validate_fn(p.objectives[k].fn, n, "objectives[" + std::to_string(k) + "]",
                report);
  }
  for (std::size_t j = 0; j < p.constraints.size(); ++j) {
    const std::string path = "constraints[" + std::to_string(j) + "]";
    validate_fn(p.constraints[j].fn, n, path, report);
    if (!std::isfinite(coefficient_value(p.constraints[j].rhs))) {
      report.fail("invalid-number", path + ".rhs", "non-finite right-hand side");
    }
  }
  collect_orderings(p, report);
  return report;
}

void warn_unbounded(const CrispProgram& crisp, ValidationReport& report) {
  const auto bounds = implied_upper_bounds(crisp);
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    if (!std::isfinite(bounds[l])) {
      report.warn("unbounded-looking", "variables[" + std::to_string(l) + "]",
                  "no constraint bounds " + crisp.variables[l] +
                      " from above; the model may be unbounded");
    }
  }
}

}  // namespace

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(),
      [](const Issue& i) { return i.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const {
  return issues.size() - error_count();
}

CrispProgram defuzzify_program(const FuzzyProgram& program) {
  CrispProgram out;
  out.variables = program.variables;
  out.objectives.reserve(program.objectives.size());
  for (const auto& obj : program.objectives) {
    out.objectives.push_back({obj.sense, defuzzify_fn(obj.fn)});
  }
  out.constraints.reserve(program.constraints.size());
  for (const auto& con : program.constraints) {
    out.constraints.push_back(
        {defuzzify_fn(con.fn), con.relation, expected_value(con.rhs)});
  }
  return out;
}

double eval_fn(const CrispSignomial& fn, std::span<const double> x) {
  double total = 0.0;
  for (const auto& t : fn.terms) {
    check_dimension(t.exponents, x.size());
    if (t.coeff == 0.0) continue;
    double prod = t.coeff * t.sign;
    for (std::size_t l = 0; l < x.size(); ++l) {
      prod *= pow_checked(x[l], t.exponents[l]);
    }
    total += prod;
  }
  return total;
}

std::vector<double> grad_fn(const CrispSignomial& fn, std::span<const double> x,
                            double epsilon) {
  for (const auto& t : fn.terms) {
    check_dimension(t.exponents, x.size());
    if (t.coeff == 0.0) continue;
    for (std::size_t l = 0; l < x.size(); ++l) {
      const double e = t.exponents[l];
      if (e != 0.0 && e < 1.0 && x[l] <= epsilon) {
        throw Error(ErrorCode::singular_gradient,
                    "gradient singular at variable " + std::to_string(l))
            .with_index(l);
      }
    }
  }
  return grad_fn_partial(fn, x, std::vector<bool>(x.size(), true));
}

std::vector<double> grad_fn_partial(const CrispSignomial& fn,
                                    std::span<const double> x,
                                    const std::vector<bool>& active) {
  std::vector<double> g(x.size(), 0.0);
  for (const auto& t : fn.terms) {
    check_dimension(t.exponents, x.size());
    if (t.coeff == 0.0) continue;
    for (std::size_t l = 0; l < x.size(); ++l) {
      const double el = t.exponents[l];
      if (!active[l] || el == 0.0) continue;
      double d = t.coeff * t.sign * el * pow_checked(x[l], el - 1.0);
      for (std::size_t j = 0; j < x.size() && d != 0.0; ++j) {
        if (j != l) d *= pow_checked(x[j], t.exponents[j]);
      }
      g[l] += d;
    }
  }
  return g;
}

bool is_affine(const CrispSignomial& fn) {
  for (const auto& t : fn.terms) {
    int ones = 0;
    for (double e : t.exponents) {
      if (e == 1.0) {
        ++ones;
      } else if (e != 0.0) {
        return false;
      }
    }
    if (ones > 1) return false;
  }
  return true;
}

std::vector<std::string> default_variable_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

ValidationReport validate_program(const FuzzyProgram& program) {
  auto report = validate_impl(program);
  if (report.ok()) warn_unbounded(defuzzify_program(program), report);
  return report;
}

ValidationReport validate_program(const CrispProgram& program) {
  auto report = validate_impl(program);
  if (report.ok()) warn_unbounded(program, report);
  return report;
}

std::vector<double> implied_upper_bounds(const CrispProgram& program) {
  const std::size_t n = program.dimension();
  std::vector<double> bounds(n, std::numeric_limits<double>::infinity());
  for (const auto& con : program.constraints) {
    if (con.relation == Relation::greater_equal) continue;
    const bool nonnegative =
        std::all_of(con.fn.terms.begin(), con.fn.terms.end(),
                    [](const auto& t) { return t.coeff * t.sign >= 0.0; });
    if (!nonnegative || con.rhs < 0.0) continue;
    for (const auto& t : con.fn.terms) {
      const double c = t.coeff * t.sign;
      if (c <= 0.0 || t.exponents.size() != n) continue;
      std::size_t var = n;
      bool single = true;
      for (std::size_t l = 0; l < n; ++l) {
        if (t.exponents[l] == 0.0) continue;
        if (var != n || t.exponents[l] < 0.0) {
          single = false;
          break;
        }
        var = l;
      }
      if (!single || var == n) continue;
      const double b = std::pow(con.rhs / c, 1.0 / t.exponents[var]);
      bounds[var] = std::min(bounds[var], b);
    }
  }
  return bounds;
}

}  // namespace it2fgp
