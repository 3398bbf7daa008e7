#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "it2fgp/error.hpp"

namespace it2fgp::host {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitInfeasible = 3;

/// Exit code for a library error.
int exit_code(ErrorCode code);

/// Runs one command line (args excludes the program name). `in` feeds the
/// interactive prompt.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in);

/// Applies IT2FGP_LOG (trace, debug, info, warn, error, off) to the default
/// logger, which writes to stderr.
void configure_logging();

}  // namespace it2fgp::host
