#pragma once

#include <array>
#include <compare>
#include <optional>

#include "it2fgp/report.hpp"

namespace it2fgp {

/// A trapezoid given by four abscissae and the membership heights attained
/// at the second and third abscissa.
struct Trapezoid {
  std::array<double, 4> a{};
  double h1 = 1.0;
  double h2 = 1.0;

  bool is_ordered() const { return a[0] <= a[1] && a[1] <= a[2] && a[2] <= a[3]; }
  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
};

/// Trapezoidal interval type-2 fuzzy number: an upper and a lower trapezoidal
/// membership function. Values are immutable once built through make_it2().
///
/// Neither abscissa ordering nor containment of the lower trapezoid inside the
/// upper one is enforced: published data routinely violates both, and the
/// expected value below does not depend on either.
class It2Number {
 public:
  It2Number() : It2Number(crisp(0.0)) {}

  const Trapezoid& upper() const { return upper_; }
  const Trapezoid& lower() const { return lower_; }

  /// The singleton (a,a,a,a;1,1) on both trapezoids.
  static It2Number crisp(double value);

  friend bool operator==(const It2Number&, const It2Number&) = default;

 private:
  It2Number(const Trapezoid& upper, const Trapezoid& lower)
      : upper_(upper), lower_(lower) {}

  friend It2Number make_it2(const Trapezoid&, const Trapezoid&,
                            ValidationReport*, bool);
  friend It2Number combine_unchecked(const It2Number&, const It2Number&, int);
  friend It2Number scale_unchecked(double, const It2Number&);

  Trapezoid upper_;
  Trapezoid lower_;
};

/// Validates heights (0,1] and finiteness, throwing Error on violation.
/// Unordered abscissae append one "ordering" warning to `report` (when given)
/// unless `strict` is set, in which case they throw invalid_number.
It2Number make_it2(const Trapezoid& upper, const Trapezoid& lower,
                   ValidationReport* report = nullptr, bool strict = false);

// Componentwise arithmetic. Each result height is the minimum of the
// corresponding operand heights, separately for upper and lower trapezoids.
It2Number it2_add(const It2Number& lhs, const It2Number& rhs);
It2Number it2_sub(const It2Number& lhs, const It2Number& rhs);
It2Number it2_mul(const It2Number& lhs, const It2Number& rhs);

/// k·A: abscissae scaled, heights kept from A.
It2Number it2_scale(double k, const It2Number& value);
/// (1/k)·A. Throws division_by_zero for k == 0.
It2Number it2_scale_reciprocal(double k, const It2Number& value);

/// Mean of the eight abscissae times the mean of the four heights.
double expected_value(const It2Number& value);

inline constexpr double kRankTolerance = 1e-12;

/// Orders by expected value; differences within kRankTolerance are equivalent.
std::weak_ordering it2_rank(const It2Number& lhs, const It2Number& rhs);

/// The common trapezoid when upper == lower and all four heights coincide.
std::optional<Trapezoid> reduce_to_type1(const It2Number& value);

}  // namespace it2fgp
