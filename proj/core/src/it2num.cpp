#include "it2fgp/it2num.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "it2fgp/error.hpp"

namespace it2fgp {

namespace {

void check_trapezoid(const Trapezoid& t, const char* which) {
  for (double v : t.a) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_number,
                  std::string(which) + " trapezoid has a non-finite abscissa");
    }
  }
  for (double h : {t.h1, t.h2}) {
    if (!std::isfinite(h)) {
      throw Error(ErrorCode::invalid_number,
                  std::string(which) + " trapezoid has a non-finite height");
    }
    if (h <= 0.0 || h > 1.0) {
      throw Error(ErrorCode::invalid_height,
                  std::string(which) + " trapezoid height " + std::to_string(h) +
                      " outside (0,1]");
    }
  }
}

Trapezoid combine(const Trapezoid& x, const Trapezoid& y, int op) {
  Trapezoid out;
  for (std::size_t i = 0; i < 4; ++i) {
    switch (op) {
      case 0: out.a[i] = x.a[i] + y.a[i]; break;
      case 1: out.a[i] = x.a[i] - y.a[i]; break;
      default: out.a[i] = x.a[i] * y.a[i]; break;
    }
  }
  out.h1 = std::min(x.h1, y.h1);
  out.h2 = std::min(x.h2, y.h2);
  return out;
}

Trapezoid scaled(double k, const Trapezoid& t) {
  Trapezoid out = t;
  for (double& v : out.a) v *= k;
  return out;
}

}  // namespace

It2Number It2Number::crisp(double value) {
  const Trapezoid t{{value, value, value, value}, 1.0, 1.0};
  return It2Number(t, t);
}

It2Number make_it2(const Trapezoid& upper, const Trapezoid& lower,
                   ValidationReport* report, bool strict) {
  check_trapezoid(upper, "upper");
  check_trapezoid(lower, "lower");
  const bool upper_ok = upper.is_ordered();
  const bool lower_ok = lower.is_ordered();
  if (!upper_ok || !lower_ok) {
    std::string which = !upper_ok && !lower_ok ? "upper and lower"
                        : !upper_ok            ? "upper"
                                               : "lower";
    std::string msg = which + " trapezoid abscissae not in nondecreasing order";
    if (strict) throw Error(ErrorCode::invalid_number, msg);
    if (report) report->warn("ordering", "", msg);
  }
  return It2Number(upper, lower);
}

It2Number combine_unchecked(const It2Number& x, const It2Number& y, int op) {
  return It2Number(combine(x.upper_, y.upper_, op),
                   combine(x.lower_, y.lower_, op));
}

It2Number scale_unchecked(double k, const It2Number& v) {
  return It2Number(scaled(k, v.upper_), scaled(k, v.lower_));
}

It2Number it2_add(const It2Number& lhs, const It2Number& rhs) {
  return combine_unchecked(lhs, rhs, 0);
}

It2Number it2_sub(const It2Number& lhs, const It2Number& rhs) {
  return combine_unchecked(lhs, rhs, 1);
}

It2Number it2_mul(const It2Number& lhs, const It2Number& rhs) {
  return combine_unchecked(lhs, rhs, 2);
}

It2Number it2_scale(double k, const It2Number& value) {
  if (!std::isfinite(k)) {
    throw Error(ErrorCode::invalid_number, "non-finite scale factor");
  }
  return scale_unchecked(k, value);
}

It2Number it2_scale_reciprocal(double k, const It2Number& value) {
  if (k == 0.0) {
    throw Error(ErrorCode::division_by_zero, "reciprocal scaling by zero");
  }
  return it2_scale(1.0 / k, value);
}

double expected_value(const It2Number& value) {
  const auto& u = value.upper();
  const auto& l = value.lower();
  // Pairwise sums so that a crisp singleton comes back bit-for-bit.
  const double abscissae = ((l.a[0] + u.a[0]) + (l.a[1] + u.a[1])) +
                           ((l.a[2] + u.a[2]) + (l.a[3] + u.a[3]));
  const double heights = (l.h1 + l.h2) + (u.h1 + u.h2);
  return (abscissae / 8.0) * (heights / 4.0);
}

std::weak_ordering it2_rank(const It2Number& lhs, const It2Number& rhs) {
  const double diff = expected_value(lhs) - expected_value(rhs);
  if (diff > kRankTolerance) return std::weak_ordering::greater;
  if (diff < -kRankTolerance) return std::weak_ordering::less;
  return std::weak_ordering::equivalent;
}

std::optional<Trapezoid> reduce_to_type1(const It2Number& value) {
  const auto& u = value.upper();
  const auto& l = value.lower();
  if (u.a != l.a) return std::nullopt;
  if (u.h1 != u.h2 || u.h1 != l.h1 || u.h1 != l.h2) return std::nullopt;
  return u;
}

}  // namespace it2fgp
