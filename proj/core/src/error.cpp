#include "it2fgp/error.hpp"

namespace it2fgp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_height: return "invalid_height";
    case ErrorCode::invalid_number: return "invalid_number";
    case ErrorCode::division_by_zero: return "division_by_zero";
    case ErrorCode::domain: return "domain";
    case ErrorCode::singular_gradient: return "singular_gradient";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::structural: return "structural";
    case ErrorCode::infeasible_or_unbounded: return "infeasible_or_unbounded";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::degenerate_goal: return "degenerate_goal";
    case ErrorCode::degenerate_pivot: return "degenerate_pivot";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::invalid_state: return "invalid_state";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::no_progress: return "no_progress";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

}  // namespace it2fgp
