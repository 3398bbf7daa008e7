#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "it2fgp/dialogue.hpp"
#include "it2fgp/it2num.hpp"
#include "it2fgp/nlpcore.hpp"
#include "it2fgp/signomial.hpp"

namespace it2fgp {

using Json = nlohmann::json;

/// A program file holds either kind; it is fuzzy as soon as one coefficient
/// or right-hand side is an IT2 record.
using AnyProgram = std::variant<FuzzyProgram, CrispProgram>;

struct ParseOptions {
  bool strict = false;  // ordering warnings become errors
};

/// Throws Error(parse) on malformed input. Ordering warnings go to `report`.
AnyProgram parse_program(const Json& doc, ValidationReport* report = nullptr,
                         const ParseOptions& options = {});
It2Number parse_it2(const Json& doc, ValidationReport* report = nullptr,
                    const std::string& path = "", bool strict = false);
std::vector<Decision> parse_decisions(const Json& doc);
Decision parse_decision(const Json& doc);

Json load_json_file(const std::filesystem::path& path);

Json to_json(const It2Number& value);
Json to_json(const FuzzyProgram& program);
Json to_json(const CrispProgram& program);
Json to_json(const AnyProgram& program);
Json to_json(const LinearFn& fn);
Json to_json(const Box& box);
Json to_json(const PayoffTable& table);
Json to_json(const MembershipSpec& spec);
Json to_json(const Proposal& proposal);
Json to_json(const Decision& decision);
Json to_json(const ValidationReport& report);

/// Full trace: program, payoff table, box, and per iteration the goals,
/// linearizations, proposal and decision.
Json session_report(const SessionState& state);
/// Compact view: status, current goals and latest proposal.
Json session_summary(const SessionState& state);

std::string_view to_string(SessionStatus status);

/// Every floating-point number rounded to 12 significant digits.
Json round12(const Json& doc);
std::string dump12(const Json& doc, int indent = -1);

/// Bundled example programs, by name.
std::vector<std::string> fixture_names();
std::optional<Json> fixture(std::string_view name);

}  // namespace it2fgp
