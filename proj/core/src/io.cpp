#include "it2fgp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "it2fgp/error.hpp"

namespace it2fgp {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse, (path.empty() ? std::string("document") : path) + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) parse_fail(path, "expected a number");
  return v.get<double>();
}

Trapezoid trapezoid(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 6) parse_fail(path, "expected [a1,a2,a3,a4,h1,h2]");
  Trapezoid t;
  for (std::size_t i = 0; i < 4; ++i) t.a[i] = number(v[i], path + "[" + std::to_string(i) + "]");
  t.h1 = number(v[4], path + "[4]");
  t.h2 = number(v[5], path + "[5]");
  return t;
}

bool is_it2(const Json& v) { return v.is_object() && v.contains("upper"); }

bool document_is_fuzzy(const Json& doc) {
  auto scan_terms = [](const Json& terms) {
    if (!terms.is_array()) return false;
    for (const auto& t : terms) {
      if (t.is_object() && t.contains("coeff") && is_it2(t["coeff"])) return true;
    }
    return false;
  };
  if (doc.contains("objectives") && doc["objectives"].is_array()) {
    for (const auto& o : doc["objectives"]) {
      if (o.is_object() && o.contains("terms") && scan_terms(o["terms"])) return true;
    }
  }
  if (doc.contains("constraints") && doc["constraints"].is_array()) {
    for (const auto& c : doc["constraints"]) {
      if (!c.is_object()) continue;
      if (c.contains("terms") && scan_terms(c["terms"])) return true;
      if (c.contains("rhs") && is_it2(c["rhs"])) return true;
    }
  }
  return false;
}

template <class Coeff>
struct Reader {
  ValidationReport* report;
  bool strict;

  Coeff coeff(const Json& v, const std::string& path) const {
    if constexpr (std::is_same_v<Coeff, double>) {
      return number(v, path);
    } else {
      if (v.is_number()) return It2Number::crisp(v.get<double>());
      return parse_it2(v, report, path, strict);
    }
  }

  Signomial<Coeff> signomial(const Json& terms, const std::string& path) const {
    if (!terms.is_array()) parse_fail(path, "expected an array of terms");
    Signomial<Coeff> fn;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      const auto& t = terms[i];
      Term<Coeff> term;
      term.coeff = coeff(field(t, "coeff", p), p + ".coeff");
      const auto& ex = field(t, "exponents", p);
      if (!ex.is_array()) parse_fail(p + ".exponents", "expected an array");
      for (std::size_t l = 0; l < ex.size(); ++l) {
        term.exponents.push_back(number(ex[l], p + ".exponents[" + std::to_string(l) + "]"));
      }
      if (t.contains("sign")) {
        const auto& s = t["sign"];
        if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
          parse_fail(p + ".sign", "sign must be 1 or -1");
        }
        term.sign = s.get<int>();
      }
      if constexpr (std::is_same_v<Coeff, double>) {
        term.coeff *= term.sign;
        term.sign = 1;
      }
      fn.terms.push_back(std::move(term));
    }
    return fn;
  }

  Program<Coeff> program(const Json& doc) const {
    Program<Coeff> p;
    const auto& vars = field(doc, "variables", "");
    if (!vars.is_array()) parse_fail("variables", "expected an array of names");
    for (const auto& v : vars) {
      if (!v.is_string()) parse_fail("variables", "names must be strings");
      p.variables.push_back(v.get<std::string>());
    }
    const auto& objs = field(doc, "objectives", "");
    if (!objs.is_array()) parse_fail("objectives", "expected an array");
    for (std::size_t k = 0; k < objs.size(); ++k) {
      const std::string path = "objectives[" + std::to_string(k) + "]";
      const auto& sense = field(objs[k], "sense", path);
      Objective<Coeff> o;
      if (sense == "maximize" || sense == "max") {
        o.sense = Sense::maximize;
      } else if (sense == "minimize" || sense == "min") {
        o.sense = Sense::minimize;
      } else {
        parse_fail(path + ".sense", "expected \"maximize\" or \"minimize\"");
      }
      o.fn = signomial(field(objs[k], "terms", path), path + ".terms");
      p.objectives.push_back(std::move(o));
    }
    const auto& cons = field(doc, "constraints", "");
    if (!cons.is_array()) parse_fail("constraints", "expected an array");
    for (std::size_t j = 0; j < cons.size(); ++j) {
      const std::string path = "constraints[" + std::to_string(j) + "]";
      Constraint<Coeff> c;
      c.fn = signomial(field(cons[j], "terms", path), path + ".terms");
      const auto& rel = field(cons[j], "relation", path);
      if (rel == "<=") {
        c.relation = Relation::less_equal;
      } else if (rel == ">=") {
        c.relation = Relation::greater_equal;
      } else if (rel == "=" || rel == "==") {
        c.relation = Relation::equal;
      } else {
        parse_fail(path + ".relation", "expected \"<=\", \">=\" or \"=\"");
      }
      c.rhs = coeff(field(cons[j], "rhs", path), path + ".rhs");
      p.constraints.push_back(std::move(c));
    }
    return p;
  }
};

Json trapezoid_json(const Trapezoid& t) { return Json::array({t.a[0], t.a[1], t.a[2], t.a[3], t.h1, t.h2}); }

Json coeff_json(double c) { return c; }
Json coeff_json(const It2Number& c) { return to_json(c); }

template <class Coeff>
Json terms_json(const Signomial<Coeff>& fn) {
  Json terms = Json::array();
  for (const auto& t : fn.terms) {
    Json term = {{"coeff", coeff_json(t.coeff)}, {"exponents", t.exponents}};
    if (t.sign != 1) term["sign"] = t.sign;
    terms.push_back(std::move(term));
  }
  return terms;
}

template <class Coeff>
Json program_json(const Program<Coeff>& p) {
  Json doc;
  doc["variables"] = p.variables;
  doc["objectives"] = Json::array();
  for (const auto& o : p.objectives) {
    doc["objectives"].push_back(
        {{"sense", o.sense == Sense::maximize ? "maximize" : "minimize"}, {"terms", terms_json(o.fn)}});
  }
  doc["constraints"] = Json::array();
  for (const auto& c : p.constraints) {
    const char* rel = c.relation == Relation::less_equal ? "<=" : c.relation == Relation::greater_equal ? ">=" : "=";
    doc["constraints"].push_back({{"terms", terms_json(c.fn)}, {"relation", rel}, {"rhs", coeff_json(c.rhs)}});
  }
  return doc;
}

Json payoff_entry_json(const PayoffEntry& e) {
  return {{"x", e.x}, {"value", e.value}, {"objective_values", e.objective_values}};
}

Json iteration_json(const Iteration& it) {
  Json goals = Json::array();
  for (const auto& g : it.goals) goals.push_back(to_json(g));
  Json lins = Json::array();
  for (const auto& l : it.linearizations) lins.push_back(to_json(l));
  return {{"goals", goals},
          {"linearizations", lins},
          {"proposal", to_json(it.proposal)},
          {"decision", it.decision ? to_json(*it.decision) : Json(nullptr)}};
}

double round_sig12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

It2Number parse_it2(const Json& doc, ValidationReport* report, const std::string& path, bool strict) {
  if (!is_it2(doc)) parse_fail(path, "expected {\"upper\":[...],\"lower\":[...]}");
  const auto upper = trapezoid(field(doc, "upper", path), path + ".upper");
  const auto lower = trapezoid(field(doc, "lower", path), path + ".lower");
  ValidationReport local;
  It2Number value = [&] {
    try {
      return make_it2(upper, lower, &local, strict);
    } catch (const Error& e) {
      throw Error(e.code(), (path.empty() ? std::string("value") : path) + ": " + e.what());
    }
  }();
  if (report) {
    for (auto& issue : local.issues) {
      issue.path = path + (issue.path.empty() ? "" : "." + issue.path);
      report->issues.push_back(std::move(issue));
    }
  }
  return value;
}

AnyProgram parse_program(const Json& doc, ValidationReport* report, const ParseOptions& options) {
  if (!doc.is_object()) parse_fail("", "expected a JSON object");
  if (document_is_fuzzy(doc)) return Reader<It2Number>{report, options.strict}.program(doc);
  return Reader<double>{report, options.strict}.program(doc);
}

Decision parse_decision(const Json& doc) {
  Decision d;
  const auto& verdict = field(doc, "verdict", "decision");
  if (verdict == "satisfied") {
    d.verdict = Verdict::satisfied;
  } else if (verdict == "revise") {
    d.verdict = Verdict::revise;
  } else {
    parse_fail("decision.verdict", "expected \"satisfied\" or \"revise\"");
  }
  if (doc.contains("targets")) {
    const auto& t = doc["targets"];
    if (!t.is_array()) parse_fail("decision.targets", "expected an array of objective indices");
    for (const auto& k : t) {
      if (!k.is_number_unsigned()) parse_fail("decision.targets", "indices must be nonnegative integers");
      d.targets.push_back(k.get<std::size_t>());
    }
  }
  return d;
}

std::vector<Decision> parse_decisions(const Json& doc) {
  const auto& list = field(doc, "decisions", "");
  if (!list.is_array()) parse_fail("decisions", "expected an array");
  std::vector<Decision> out;
  for (const auto& d : list) out.push_back(parse_decision(d));
  return out;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::parse, path.string() + ": " + e.what());
  }
}

Json to_json(const It2Number& value) {
  return {{"upper", trapezoid_json(value.upper())}, {"lower", trapezoid_json(value.lower())}};
}

Json to_json(const FuzzyProgram& program) { return program_json(program); }
Json to_json(const CrispProgram& program) { return program_json(program); }
Json to_json(const AnyProgram& program) {
  return std::visit([](const auto& p) { return program_json(p); }, program);
}

Json to_json(const LinearFn& fn) { return {{"coeffs", fn.coeffs}, {"constant", fn.constant}}; }

Json to_json(const Box& box) { return {{"lower", box.lower}, {"upper", box.upper}}; }

Json to_json(const PayoffTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"sense", r.sense == Sense::maximize ? "maximize" : "minimize"},
                    {"max", payoff_entry_json(r.max)},
                    {"min", payoff_entry_json(r.min)}});
  }
  return rows;
}

Json to_json(const MembershipSpec& spec) {
  const bool max = spec.kind == GoalKind::max_goal;
  return {{"objective", spec.objective},
          {"kind", max ? "max" : "min"},
          {"aspiration", spec.aspiration},
          {max ? "lower_limit" : "upper_limit", spec.limit}};
}

Json to_json(const Proposal& p) {
  return {{"iteration", p.iteration},
          {"x", p.x},
          {"f", p.objective_values},
          {"mu", p.memberships},
          {"mu_current", p.current_memberships},
          {"beta", p.beta},
          {"d_minus", p.d_minus},
          {"d_plus", p.d_plus},
          {"linearization_points", p.linearization_points}};
}

Json to_json(const Decision& d) {
  Json out = {{"verdict", d.verdict == Verdict::satisfied ? "satisfied" : "revise"}};
  if (d.verdict == Verdict::revise) out["targets"] = d.targets;
  return out;
}

Json to_json(const ValidationReport& report) {
  Json issues = Json::array();
  for (const auto& i : report.issues) {
    issues.push_back({{"severity", i.severity == Severity::error ? "error" : "warning"},
                      {"code", i.code},
                      {"path", i.path},
                      {"message", i.message}});
  }
  return {{"ok", report.ok()},
          {"errors", report.error_count()},
          {"warnings", report.warning_count()},
          {"issues", issues}};
}

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::awaiting_decision: return "awaiting-decision";
    case SessionStatus::finished: return "finished";
    case SessionStatus::failed: return "failed";
  }
  return "unknown";
}

Json session_report(const SessionState& s) {
  Json doc;
  doc["program"] = s.fuzzy ? to_json(*s.fuzzy) : to_json(s.crisp);
  if (s.fuzzy) doc["crisp_program"] = to_json(s.crisp);
  doc["status"] = to_string(s.status);
  if (s.failure) {
    doc["failure"] = {{"stage", s.failure->stage},
                      {"code", to_string(s.failure->code)},
                      {"message", s.failure->message}};
  }
  if (!s.payoff.rows.empty()) doc["payoff"] = to_json(s.payoff);
  if (!s.box.lower.empty()) doc["box"] = to_json(s.box);
  doc["iterations"] = Json::array();
  for (const auto& it : s.iterations) doc["iterations"].push_back(iteration_json(it));
  return doc;
}

Json session_summary(const SessionState& s) {
  Json doc;
  doc["status"] = to_string(s.status);
  if (s.failure) {
    doc["failure"] = {{"stage", s.failure->stage},
                      {"code", to_string(s.failure->code)},
                      {"message", s.failure->message}};
  }
  doc["variables"] = s.crisp.variables;
  Json goals = Json::array();
  for (const auto& g : s.goals) goals.push_back(to_json(g));
  doc["goals"] = goals;
  Json initial = Json::array();
  for (const auto& g : s.initial_goals) initial.push_back(to_json(g));
  doc["initial_goals"] = initial;
  if (!s.box.lower.empty()) doc["box"] = to_json(s.box);
  doc["iterations"] = s.iterations.size();
  doc["proposal"] = s.iterations.empty() ? Json(nullptr) : to_json(s.iterations.back().proposal);
  Json history = Json::array();
  for (const auto& it : s.iterations) {
    history.push_back({{"proposal", to_json(it.proposal)},
                       {"decision", it.decision ? to_json(*it.decision) : Json(nullptr)}});
  }
  doc["history"] = history;
  return doc;
}

Json round12(const Json& doc) {
  if (doc.is_number_float()) return round_sig12(doc.get<double>());
  if (doc.is_array()) {
    Json out = Json::array();
    for (const auto& v : doc) out.push_back(round12(v));
    return out;
  }
  if (doc.is_object()) {
    Json out = Json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = round12(it.value());
    return out;
  }
  return doc;
}

std::string dump12(const Json& doc, int indent) { return round12(doc).dump(indent); }

}  // namespace it2fgp
