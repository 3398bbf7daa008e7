#pragma once

#include <span>
#include <vector>

namespace it2fgp {

/// Affine function coeffs·x + constant.
struct LinearFn {
  std::vector<double> coeffs;
  double constant = 0.0;

  double operator()(std::span<const double> x) const {
    double v = constant;
    for (std::size_t l = 0; l < coeffs.size() && l < x.size(); ++l) {
      v += coeffs[l] * x[l];
    }
    return v;
  }

  friend bool operator==(const LinearFn&, const LinearFn&) = default;
};

}  // namespace it2fgp
