#pragma once

#include <string>
#include <vector>

namespace it2fgp {

enum class Severity { warning, error };

struct Issue {
  Severity severity = Severity::warning;
  std::string code;     // e.g. "ordering", "dimension"
  std::string path;     // location inside the program, e.g. "constraints[0].rhs"
  std::string message;
};

/// Accumulated findings of a validation pass. Warnings never block a solve.
struct ValidationReport {
  std::vector<Issue> issues;

  void warn(std::string code, std::string path, std::string message) {
    issues.push_back({Severity::warning, std::move(code), std::move(path),
                      std::move(message)});
  }
  void fail(std::string code, std::string path, std::string message) {
    issues.push_back({Severity::error, std::move(code), std::move(path),
                      std::move(message)});
  }

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool ok() const { return error_count() == 0; }
};

}  // namespace it2fgp
