#include "it2fgp/host/service.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "it2fgp/error.hpp"

namespace it2fgp::host {

namespace {

HttpResponse error_response(int status, std::string_view code, const std::string& message) {
  return {status, {{"code", code}, {"message", message}}};
}

HttpResponse error_response(const Error& e) {
  return error_response(http_status(e.code()), to_string(e.code()), e.what());
}

HttpResponse not_found(const std::string& id) {
  return error_response(404, "not_found", "no session with id " + id);
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::parse, std::string("request body is not JSON: ") + e.what());
  }
}

Json session_head(const std::string& id, const SessionState& s) {
  Json doc = {{"id", id}, {"status", to_string(s.status)}};
  doc["proposal"] = s.iterations.empty() ? Json(nullptr) : to_json(s.proposal());
  if (s.failure) {
    doc["failure"] = {{"stage", s.failure->stage},
                      {"code", to_string(s.failure->code)},
                      {"message", s.failure->message}};
  }
  return doc;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_state:
    case ErrorCode::no_progress:
      return 409;
    default:
      return 400;
  }
}

SessionService::SessionService(SessionConfig base) : base_(std::move(base)) {}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) {
  std::lock_guard lock(registry_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse SessionService::create(const std::string& body) {
  try {
    const Json req = parse_body(body);
    if (!req.is_object()) throw Error(ErrorCode::parse, "expected a JSON object");
    Json program;
    if (req.contains("fixture")) {
      if (!req["fixture"].is_string()) throw Error(ErrorCode::parse, "fixture must be a string");
      const auto name = req["fixture"].get<std::string>();
      auto doc = fixture(name);
      if (!doc) return error_response(404, "not_found", "no bundled fixture named " + name);
      program = std::move(*doc);
    } else if (req.contains("program")) {
      program = req["program"];
    } else {
      throw Error(ErrorCode::parse, "expected \"fixture\" or \"program\"");
    }
    SessionConfig cfg = base_;
    if (req.contains("seed")) cfg.nlp.seed = req["seed"].get<std::uint64_t>();
    if (req.contains("restarts")) cfg.nlp.restarts = req["restarts"].get<std::size_t>();

    const auto parsed = parse_program(program);
    auto entry = std::make_shared<Entry>();
    entry->created_at = now_utc();
    entry->state = std::visit([&](const auto& p) { return open_session(p, cfg); }, parsed);

    const std::string id = "s" + std::to_string(next_id_++);
    {
      std::lock_guard lock(registry_mutex_);
      sessions_.emplace(id, entry);
    }
    spdlog::info("session {} opened ({})", id, to_string(entry->state.status));
    Json doc = session_head(id, entry->state);
    doc["created_at"] = entry->created_at;
    return {201, doc};
  } catch (const Error& e) {
    return error_response(e);
  } catch (const Json::exception& e) {
    return error_response(400, "parse", e.what());
  }
}

HttpResponse SessionService::get(const std::string& id) {
  const auto entry = find(id);
  if (!entry) return not_found(id);
  std::lock_guard lock(entry->mutex);
  Json doc = session_summary(entry->state);
  doc["id"] = id;
  doc["created_at"] = entry->created_at;
  return {200, doc};
}

HttpResponse SessionService::decide(const std::string& id, const std::string& body) {
  const auto entry = find(id);
  if (!entry) return not_found(id);
  try {
    const Decision d = parse_decision(parse_body(body));
    std::lock_guard lock(entry->mutex);
    entry->state = it2fgp::decide(entry->state, d);
    spdlog::info("session {}: {} -> {}", id, d.verdict == Verdict::satisfied ? "satisfied" : "revise",
                 to_string(entry->state.status));
    Json doc = session_head(id, entry->state);
    if (entry->state.status == SessionStatus::finished) doc["final"] = doc["proposal"];
    return {200, doc};
  } catch (const Error& e) {
    return error_response(e);
  } catch (const Json::exception& e) {
    return error_response(400, "parse", e.what());
  }
}

HttpResponse SessionService::trace(const std::string& id) {
  const auto entry = find(id);
  if (!entry) return not_found(id);
  std::lock_guard lock(entry->mutex);
  return {200, session_report(entry->state)};
}

HttpResponse SessionService::fixtures() const { return {200, {{"fixtures", fixture_names()}}}; }

void SessionService::mount(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(dump12(r.body), "application/json");
  };
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get("/fixtures", [this, send](const httplib::Request&, httplib::Response& res) { send(res, fixtures()); });
  server.Post("/sessions", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create(req.body));
  });
  server.Get(R"(/sessions/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get(req.matches[1]));
  });
  server.Get(R"(/sessions/([^/]+)/trace)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, trace(req.matches[1]));
  });
  server.Post(R"(/sessions/([^/]+)/decision)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, decide(req.matches[1], req.body));
  });
  server.set_error_handler([send](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, error_response(res.status, "not_found", "no such route"));
  });
}

int serve(SessionService& service, const std::string& host, int port) {
  httplib::Server server;
  service.mount(server);
  spdlog::info("listening on http://{}:{}", host, port);
  if (!server.listen(host, port)) {
    spdlog::error("cannot listen on {}:{}", host, port);
    return 1;
  }
  return 0;
}

}  // namespace it2fgp::host
