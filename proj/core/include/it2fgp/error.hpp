#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace it2fgp {

enum class ErrorCode {
  invalid_height,
  invalid_number,
  division_by_zero,
  domain,
  singular_gradient,
  dimension,
  structural,
  infeasible_or_unbounded,
  non_convergence,
  degenerate_goal,
  degenerate_pivot,
  unsupported,
  invalid_state,
  invalid_argument,
  no_progress,
  parse,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Carries a machine-readable code and, where the
/// failing operation has one, the offending index or the best point found.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  const std::optional<std::size_t>& index() const noexcept { return index_; }
  Error& with_index(std::size_t i) {
    index_ = i;
    return *this;
  }

  const std::optional<std::vector<double>>& best_point() const noexcept {
    return best_point_;
  }
  Error& with_best_point(std::vector<double> x) {
    best_point_ = std::move(x);
    return *this;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
  std::optional<std::vector<double>> best_point_;
};

}  // namespace it2fgp
