#pragma once

#include <random>
#include <string>

#include "it2fgp/io.hpp"

namespace it2fgp::testing {

inline CrispProgram crisp_fixture(const std::string& name) {
  return std::get<CrispProgram>(parse_program(*fixture(name)));
}

inline FuzzyProgram fuzzy_fixture(const std::string& name) {
  return std::get<FuzzyProgram>(parse_program(*fixture(name)));
}

inline Trapezoid random_trapezoid(std::mt19937_64& rng, double lo = -20.0, double hi = 20.0) {
  std::uniform_real_distribution<double> a(lo, hi), h(0.1, 1.0);
  return {{a(rng), a(rng), a(rng), a(rng)}, h(rng), h(rng)};
}

inline It2Number random_it2(std::mt19937_64& rng, double lo = -20.0, double hi = 20.0) {
  return make_it2(random_trapezoid(rng, lo, hi), random_trapezoid(rng, lo, hi));
}

/// Expected value spelled out, independent of the library.
inline double expected_value_by_hand(const It2Number& v) {
  double s = 0.0;
  for (double a : v.upper().a) s += a;
  for (double a : v.lower().a) s += a;
  return s / 8.0 * (v.upper().h1 + v.upper().h2 + v.lower().h1 + v.lower().h2) / 4.0;
}

}  // namespace it2fgp::testing
