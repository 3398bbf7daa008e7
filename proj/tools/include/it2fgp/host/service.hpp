#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "it2fgp/dialogue.hpp"
#include "it2fgp/io.hpp"

namespace httplib {
class Server;
}

namespace it2fgp::host {

struct HttpResponse {
  int status = 200;
  Json body;
};

/// In-memory session store behind the HTTP API. Handlers are plain methods so
/// they can be exercised without a socket.
class SessionService {
 public:
  explicit SessionService(SessionConfig base = {});

  HttpResponse create(const std::string& body);
  HttpResponse get(const std::string& id);
  HttpResponse decide(const std::string& id, const std::string& body);
  HttpResponse trace(const std::string& id);
  HttpResponse fixtures() const;

  /// Routes: POST /sessions, GET /sessions/{id}, POST /sessions/{id}/decision,
  /// GET /sessions/{id}/trace, GET /fixtures.
  void mount(httplib::Server& server);

 private:
  struct Entry {
    std::mutex mutex;
    std::string created_at;
    SessionState state;
  };

  std::shared_ptr<Entry> find(const std::string& id);

  SessionConfig base_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

/// Maps a library error to an HTTP status.
int http_status(ErrorCode code);

/// Blocks serving on host:port until the server is stopped.
int serve(SessionService& service, const std::string& host, int port);

}  // namespace it2fgp::host
