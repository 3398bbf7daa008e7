#pragma once

#include <span>
#include <string>
#include <vector>

#include "it2fgp/it2num.hpp"
#include "it2fgp/report.hpp"

namespace it2fgp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, greater_equal, equal };

/// One monomial `sign · coeff · Π x_l^exponents[l]`. For crisp programs the
/// sign is folded into `coeff` and stays +1.
template <class Coeff>
struct Term {
  Coeff coeff{};
  std::vector<double> exponents;
  int sign = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

template <class Coeff>
struct Signomial {
  std::vector<Term<Coeff>> terms;

  friend bool operator==(const Signomial&, const Signomial&) = default;
};

template <class Coeff>
struct Objective {
  Sense sense = Sense::maximize;
  Signomial<Coeff> fn;

  friend bool operator==(const Objective&, const Objective&) = default;
};

template <class Coeff>
struct Constraint {
  Signomial<Coeff> fn;
  Relation relation = Relation::less_equal;
  Coeff rhs{};

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Multiobjective signomial program over x >= 0.
template <class Coeff>
struct Program {
  std::vector<std::string> variables;
  std::vector<Objective<Coeff>> objectives;
  std::vector<Constraint<Coeff>> constraints;

  std::size_t dimension() const { return variables.size(); }

  friend bool operator==(const Program&, const Program&) = default;
};

using FuzzySignomial = Signomial<It2Number>;
using CrispSignomial = Signomial<double>;
using FuzzyProgram = Program<It2Number>;
using CrispProgram = Program<double>;

/// Replaces every fuzzy coefficient by sign·expected_value, keeping structure.
CrispProgram defuzzify_program(const FuzzyProgram& program);

/// Σ coeff·Π x_l^α_l with 0^0 = 1. Throws domain for a negative base with a
/// non-integer exponent and for 0 raised to a negative exponent.
double eval_fn(const CrispSignomial& fn, std::span<const double> x);

inline constexpr double kGradientEpsilon = 1e-9;

/// Analytic gradient. Throws singular_gradient (index = variable) when a
/// variable carrying an exponent in (0,1) or below 0 sits at or below
/// `epsilon`.
std::vector<double> grad_fn(const CrispSignomial& fn, std::span<const double> x,
                            double epsilon = kGradientEpsilon);

/// Gradient restricted to the variables flagged in `active`; entries for the
/// other variables are zero and never checked for singularity.
std::vector<double> grad_fn_partial(const CrispSignomial& fn,
                                    std::span<const double> x,
                                    const std::vector<bool>& active);

/// True when every term is a constant or a single variable with exponent 1.
bool is_affine(const CrispSignomial& fn);

/// Variable names x1..xn.
std::vector<std::string> default_variable_names(std::size_t n);

ValidationReport validate_program(const FuzzyProgram& program);
ValidationReport validate_program(const CrispProgram& program);

/// Upper bound per variable implied by some <= or = constraint whose
/// coefficients are all nonnegative (other variables set to 0, the lone
/// single-variable monomial inverted). Entries are +inf when none applies.
std::vector<double> implied_upper_bounds(const CrispProgram& program);

}  // namespace it2fgp
