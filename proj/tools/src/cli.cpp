#include "it2fgp/host/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "it2fgp/baseline.hpp"
#include "it2fgp/dialogue.hpp"
#include "it2fgp/host/service.hpp"
#include "it2fgp/io.hpp"

namespace it2fgp::host {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string decisions;
  std::string run_log;
  std::string comparison;
  std::uint64_t seed = 42;
  std::size_t restarts = 64;
  bool strict = false;
  bool dump_lp = false;
  bool json = false;
  std::string host = "127.0.0.1";
  int port = 8080;
};

struct Loaded {
  AnyProgram program;
  ValidationReport report;
  std::string name;
};

Json read_input(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_json_file(arg);
  if (auto doc = fixture(arg)) return *doc;
  const auto stem = std::filesystem::path(arg).stem().string();
  if (auto doc = fixture(stem); doc && !std::filesystem::path(arg).has_parent_path()) return *doc;
  throw Error(ErrorCode::parse, "no such file or bundled fixture: " + arg);
}

Loaded load(const Options& o) {
  Loaded l;
  l.name = std::filesystem::path(o.input).stem().string();
  l.program = parse_program(read_input(o.input), &l.report, {o.strict});
  const auto structural = std::visit([](const auto& p) { return validate_program(p); }, l.program);
  for (const auto& issue : structural.issues) {
    // ordering warnings were already collected while parsing
    if (issue.code != "ordering") l.report.issues.push_back(issue);
  }
  for (const auto& issue : l.report.issues) {
    if (issue.severity == Severity::warning) spdlog::warn("{}: {}", issue.path, issue.message);
  }
  if (!l.report.ok()) {
    for (const auto& issue : l.report.issues) {
      if (issue.severity == Severity::error) throw Error(ErrorCode::structural, issue.path + ": " + issue.message);
    }
  }
  return l;
}

SessionConfig session_config(const Options& o, std::ostream& err) {
  SessionConfig cfg;
  cfg.nlp.seed = o.seed;
  cfg.nlp.restarts = o.restarts;
  if (o.dump_lp) {
    cfg.on_lp = [&err](std::size_t iteration, const LpModel& m) {
      err << "-- LP, iteration " << iteration << '\n';
      dump_lp(m, err);
    };
  }
  return cfg;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::parse, "cannot write " + path);
  f << text << '\n';
}

void write_run_log(const std::string& path, const PayoffTable& table) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::parse, "cannot write " + path);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    for (const auto* which : {"max", "min"}) {
      const auto& e = std::string(which) == "max" ? table.rows[k].max : table.rows[k].min;
      for (const auto& r : e.log) {
        f << dump12({{"objective", k},
                     {"sense", which},
                     {"restart", r.index},
                     {"start", r.start},
                     {"iterations", r.iterations},
                     {"value", r.value},
                     {"violation", r.violation},
                     {"search_upper", e.search_upper}})
          << '\n';
      }
    }
  }
}

CrispProgram crisp_of(const AnyProgram& p) {
  if (const auto* f = std::get_if<FuzzyProgram>(&p)) return defuzzify_program(*f);
  return std::get<CrispProgram>(p);
}

std::string fmt3(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

std::string vec3(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt3(v[i]);
  return out + ")";
}

void print_payoff(const PayoffTable& t, std::ostream& out) {
  out << std::left << std::setw(10) << "solution" << std::setw(34) << "x";
  for (std::size_t k = 0; k < t.rows.size(); ++k) out << std::setw(12) << ("f" + std::to_string(k + 1));
  out << '\n';
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    for (const auto* which : {"max", "min"}) {
      const auto& e = std::string(which) == "max" ? t.rows[k].max : t.rows[k].min;
      out << std::setw(10) << (std::string(which) + " f" + std::to_string(k + 1)) << std::setw(34) << vec3(e.x);
      for (double v : e.objective_values) out << std::setw(12) << fmt3(v);
      out << '\n';
    }
  }
  out << std::right;
}

void print_proposal(const SessionState& s, std::ostream& out) {
  const auto& p = s.proposal();
  out << "iteration " << p.iteration << '\n';
  out << "  x    = " << vec3(p.x) << '\n';
  out << "  f    = " << vec3(p.objective_values) << '\n';
  out << "  mu   = " << vec3(p.memberships) << '\n';
  out << "  beta = " << fmt3(p.beta) << '\n';
  for (const auto& g : s.goals) {
    out << "  goal f" << g.objective + 1 << ": aspiration " << fmt3(g.aspiration)
        << (g.kind == GoalKind::max_goal ? ", lower limit " : ", upper limit ") << fmt3(g.limit) << '\n';
  }
}

void write_comparison(const std::string& path, const SessionState& s, const std::string& name) {
  if (path.empty() || s.iterations.empty()) return;
  std::vector<ReferenceRow> rows;
  const auto& p = s.proposal();
  rows.push_back({"this run", p.x, p.objective_values, p.memberships});
  const auto weights = goal_weights(s.initial_goals);
  const auto wa = solve_weighted_additive(s.iterations.front().linearizations, s.box, weights);
  if (wa.status == LpStatus::optimal) {
    ReferenceRow r{"weighted additive", wa.x, {}, {}};
    for (const auto& obj : s.crisp.objectives) r.f.push_back(eval_fn(obj.fn, wa.x));
    for (const auto& g : s.initial_goals) r.mu.push_back(membership_of_value(g, r.f[g.objective]));
    rows.push_back(std::move(r));
  }
  const int example = name.rfind("example1", 0) == 0 ? 1 : name.rfind("example2", 0) == 0 ? 2 : 0;
  if (example) {
    for (auto& r : reference_table(example)) {
      r.method = "published: " + r.method;
      rows.push_back(std::move(r));
    }
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::parse, "cannot write " + path);
  write_comparison_csv(rows, f);
}

int finish_session(const SessionState& s, std::ostream& err) {
  if (s.status != SessionStatus::failed) return kExitOk;
  err << "error: session failed at stage " << s.failure->stage << ": " << s.failure->message << '\n';
  return exit_code(s.failure->code);
}

SessionState open(const Loaded& l, const SessionConfig& cfg) {
  return std::visit([&](const auto& p) { return open_session(p, cfg); }, l.program);
}

int run_validate(const Options& o, std::ostream& out) {
  Loaded l;
  l.program = parse_program(read_input(o.input), &l.report, {o.strict});
  const auto structural = std::visit([](const auto& p) { return validate_program(p); }, l.program);
  for (const auto& issue : structural.issues) {
    if (issue.code != "ordering") l.report.issues.push_back(issue);
  }
  out << dump12(to_json(l.report), 2) << '\n';
  return l.report.ok() ? kExitOk : kExitBadInput;
}

int run_defuzzify(const Options& o, std::ostream& out) {
  const auto l = load(o);
  write_text(o.output, dump12(to_json(crisp_of(l.program)), 1), out);
  return kExitOk;
}

int run_payoff(const Options& o, std::ostream& out, std::ostream& err) {
  const auto l = load(o);
  const auto cfg = session_config(o, err);
  const auto table = payoff_table(crisp_of(l.program), cfg.nlp);
  write_run_log(o.run_log, table);
  if (o.json) {
    out << dump12({{"payoff", to_json(table)}, {"box", to_json(variable_box(table))}}, 2) << '\n';
  } else {
    print_payoff(table, out);
    const auto box = variable_box(table);
    for (std::size_t l2 = 0; l2 < box.dimension(); ++l2) {
      out << fmt3(box.lower[l2]) << " <= x" << l2 + 1 << " <= " << fmt3(box.upper[l2]) << '\n';
    }
  }
  return kExitOk;
}

int run_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto l = load(o);
  std::vector<Decision> decisions{{Verdict::satisfied, {}}};
  if (!o.decisions.empty()) decisions = parse_decisions(load_json_file(o.decisions));
  auto s = open(l, session_config(o, err));
  write_run_log(o.run_log, s.payoff);
  s = replay(std::move(s), decisions);
  write_text(o.output, dump12(session_report(s), 1), out);
  write_comparison(o.comparison, s, l.name);
  return finish_session(s, err);
}

int run_interactive(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto l = load(o);
  auto s = open(l, session_config(o, err));
  write_run_log(o.run_log, s.payoff);
  if (s.status == SessionStatus::failed) return finish_session(s, err);
  out << "payoff table\n";
  print_payoff(s.payoff, out);
  while (s.status == SessionStatus::awaiting_decision) {
    print_proposal(s, out);
    out << "satisfied? [s] accept, [r k ...] revise objectives k (1-based), [q] quit: " << std::flush;
    std::string line;
    if (!std::getline(in, line)) break;
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    try {
      if (cmd == "q") break;
      if (cmd == "s") {
        s = decide(s, {Verdict::satisfied, {}});
      } else if (cmd == "r") {
        Decision d{Verdict::revise, {}};
        std::size_t k = 0;
        while (words >> k) {
          if (k == 0) throw Error(ErrorCode::invalid_argument, "objectives are numbered from 1");
          d.targets.push_back(k - 1);
        }
        s = decide(s, d);
      } else {
        out << "unrecognised input\n";
      }
    } catch (const Error& e) {
      out << "cannot apply: " << e.what() << '\n';
    }
  }
  if (s.status == SessionStatus::finished) {
    out << "final solution\n";
    print_proposal(s, out);
  }
  if (!o.output.empty()) write_text(o.output, dump12(session_report(s), 1), out);
  return finish_session(s, err);
}

int run_serve(const Options& o, std::ostream& err) {
  SessionService service(session_config(o, err));
  return serve(service, o.host, o.port);
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::invalid_height:
    case ErrorCode::invalid_number:
    case ErrorCode::dimension:
    case ErrorCode::structural:
      return kExitBadInput;
    case ErrorCode::infeasible_or_unbounded:
      return kExitInfeasible;
    default:
      return kExitInternal;
  }
}

void configure_logging() {
  if (!spdlog::get("it2fgp")) {
    auto logger = spdlog::stderr_color_mt("it2fgp");
    spdlog::set_default_logger(logger);
  }
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("IT2FGP_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  Options o;
  CLI::App app{"Interactive fuzzy goal programming for IT2-fuzzy multiobjective signomial programs", "it2fgp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Seed for the multistart search")->capture_default_str();
  app.add_option("--restarts", o.restarts, "Restarts per single-objective solve")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--strict-validation", o.strict, "Treat trapezoid ordering warnings as errors");
  app.add_flag("--dump-lp", o.dump_lp, "Print every goal-programming LP tableau to stderr");
  app.add_option("--run-log", o.run_log, "Write one JSON line per restart of the payoff solves");

  auto input = [&](CLI::App* sub) {
    sub->add_option("program", o.input, "Problem file or bundled fixture name")->required();
  };
  auto* validate = app.add_subcommand("validate", "Check a problem file");
  input(validate);
  auto* defuzz = app.add_subcommand("defuzzify", "Replace fuzzy coefficients by expected values");
  input(defuzz);
  defuzz->add_option("-o,--output", o.output, "Output file (default stdout)");
  auto* payoff = app.add_subcommand("payoff", "Individual optima, payoff table and variable box");
  input(payoff);
  payoff->add_flag("--json", o.json, "Machine-readable output");
  auto* solve = app.add_subcommand("solve", "Run a session driven by a decision script");
  input(solve);
  solve->add_option("--decisions", o.decisions, "Decision script (default: accept the first proposal)");
  solve->add_option("-o,--output", o.output, "Trace file (default stdout)");
  solve->add_option("--comparison", o.comparison, "Write a comparison CSV");
  auto* interactive = app.add_subcommand("interactive", "Prompt for decisions on the terminal");
  input(interactive);
  interactive->add_option("-o,--output", o.output, "Trace file written at the end");
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  srv->add_option("--port", o.port, "TCP port")->capture_default_str();
  srv->add_option("--host", o.host, "Bind address")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*validate) return run_validate(o, out);
    if (*defuzz) return run_defuzzify(o, out);
    if (*payoff) return run_payoff(o, out, err);
    if (*solve) return run_solve(o, out, err);
    if (*interactive) return run_interactive(o, in, out, err);
    if (*srv) return run_serve(o, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace it2fgp::host
