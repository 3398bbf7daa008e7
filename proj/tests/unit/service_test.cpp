#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "it2fgp/host/service.hpp"

namespace it2fgp::host {
namespace {

std::string create_body(const char* fixture) { return Json{{"fixture", fixture}}.dump(); }

TEST(Service, CreateFromFixture) {
  SessionService svc;
  const auto r = svc.create(create_body("example2_crisp"));
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["id"], "s1");
  EXPECT_EQ(r.body["status"], "awaiting-decision");
  EXPECT_NEAR(r.body["proposal"]["f"][0].get<double>(), 270.366, 0.5);
  EXPECT_NEAR(r.body["proposal"]["f"][1].get<double>(), 20.820, 0.1);
  EXPECT_TRUE(r.body.contains("created_at"));
  EXPECT_EQ(svc.create(create_body("example2_crisp")).body["id"], "s2");
}

TEST(Service, CreateFromInlineProgram) {
  SessionService svc;
  const Json program = *fixture("example2_fuzzy");
  const auto r = svc.create(Json{{"program", program}, {"seed", 3}, {"restarts", 16}}.dump());
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["status"], "awaiting-decision");
}

TEST(Service, CreateErrors) {
  SessionService svc;
  EXPECT_EQ(svc.create("not json").status, 400);
  EXPECT_EQ(svc.create("{}").status, 400);
  EXPECT_EQ(svc.create(R"({"program": {"variables": 3}})").status, 400);
  const auto missing = svc.create(create_body("example9"));
  EXPECT_EQ(missing.status, 404);
  EXPECT_EQ(missing.body["code"], "not_found");
  EXPECT_TRUE(missing.body.contains("message"));
}

TEST(Service, FailedSessionIsStillCreated) {
  SessionService svc;
  const Json program = Json::parse(R"({
    "variables": ["x1"],
    "objectives": [{"sense": "maximize", "terms": [{"coeff": 1, "exponents": [1]}]},
                   {"sense": "minimize", "terms": [{"coeff": 1, "exponents": [1]}]}],
    "constraints": [{"terms": [{"coeff": 1, "exponents": [1]}], "relation": "<=", "rhs": 1},
                    {"terms": [{"coeff": 1, "exponents": [1]}], "relation": ">=", "rhs": 2}]
  })");
  const auto r = svc.create(Json{{"program", program}}.dump());
  ASSERT_EQ(r.status, 201);
  EXPECT_EQ(r.body["status"], "failed");
  EXPECT_EQ(r.body["failure"]["stage"], "payoff");
  EXPECT_TRUE(r.body["proposal"].is_null());
}

TEST(Service, DecisionFlow) {
  SessionService svc;
  const std::string id = svc.create(create_body("example2_crisp")).body["id"];
  const auto revised = svc.decide(id, R"({"verdict":"revise","targets":[0]})");
  ASSERT_EQ(revised.status, 200);
  EXPECT_EQ(revised.body["proposal"]["iteration"], 2);
  EXPECT_GT(revised.body["proposal"]["beta"].get<double>(), 0.0);
  EXPECT_FALSE(revised.body.contains("final"));

  const auto done = svc.decide(id, R"({"verdict":"satisfied"})");
  ASSERT_EQ(done.status, 200);
  EXPECT_EQ(done.body["status"], "finished");
  EXPECT_EQ(done.body["final"], revised.body["proposal"]);

  const auto again = svc.decide(id, R"({"verdict":"satisfied"})");
  EXPECT_EQ(again.status, 409);
  EXPECT_EQ(again.body["code"], "invalid_state");

  const auto trace = svc.trace(id);
  ASSERT_EQ(trace.status, 200);
  EXPECT_EQ(trace.body["iterations"].size(), 2u);
  EXPECT_EQ(trace.body["iterations"][1]["proposal"], done.body["final"]);

  const auto state = svc.get(id);
  EXPECT_EQ(state.body["id"], id);
  EXPECT_EQ(state.body["status"], "finished");
  EXPECT_EQ(state.body["history"].size(), 2u);
}

TEST(Service, DecisionErrors) {
  SessionService svc;
  const std::string id = svc.create(create_body("example2_crisp")).body["id"];
  EXPECT_EQ(svc.decide("nope", R"({"verdict":"satisfied"})").status, 404);
  EXPECT_EQ(svc.decide(id, R"({"verdict":"perhaps"})").status, 400);
  EXPECT_EQ(svc.decide(id, R"({"verdict":"revise","targets":[5]})").status, 400);
  EXPECT_EQ(svc.decide(id, R"({"verdict":"revise","targets":[1]})").status, 409);
  EXPECT_EQ(svc.get("nope").status, 404);
  EXPECT_EQ(svc.trace("nope").status, 404);
}

TEST(Service, FixtureList) {
  SessionService svc;
  const auto r = svc.fixtures();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["fixtures"].size(), 4u);
}

TEST(Service, HttpStatusMapping) {
  EXPECT_EQ(http_status(ErrorCode::invalid_state), 409);
  EXPECT_EQ(http_status(ErrorCode::no_progress), 409);
  EXPECT_EQ(http_status(ErrorCode::parse), 400);
  EXPECT_EQ(http_status(ErrorCode::invalid_argument), 400);
}

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    service_.mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }

  SessionService service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(LiveServer, EndToEnd) {
  auto c = client();
  const auto fx = c.Get("/fixtures");
  ASSERT_TRUE(fx);
  EXPECT_EQ(fx->status, 200);
  EXPECT_EQ(fx->get_header_value("Access-Control-Allow-Origin"), "*");

  const auto created = c.Post("/sessions", create_body("example2_crisp"), "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201);
  const auto body = Json::parse(created->body);
  const std::string id = body["id"];
  EXPECT_NEAR(body["proposal"]["mu"][0].get<double>(), 0.931, 0.01);

  const auto revised = c.Post("/sessions/" + id + "/decision", R"({"verdict":"revise","targets":[0]})", "application/json");
  ASSERT_TRUE(revised);
  EXPECT_EQ(revised->status, 200);
  const auto done = c.Post("/sessions/" + id + "/decision", R"({"verdict":"satisfied"})", "application/json");
  ASSERT_TRUE(done);
  EXPECT_EQ(Json::parse(done->body)["status"], "finished");
  const auto conflict = c.Post("/sessions/" + id + "/decision", R"({"verdict":"satisfied"})", "application/json");
  ASSERT_TRUE(conflict);
  EXPECT_EQ(conflict->status, 409);

  const auto trace = c.Get("/sessions/" + id + "/trace");
  ASSERT_TRUE(trace);
  EXPECT_EQ(Json::parse(trace->body)["iterations"].size(), 2u);
  // the trace repeats what the decision endpoint returned, digit for digit
  EXPECT_EQ(Json::parse(trace->body)["iterations"][1]["proposal"], Json::parse(revised->body)["proposal"]);

  const auto summary = c.Get("/sessions/" + id);
  ASSERT_TRUE(summary);
  EXPECT_EQ(Json::parse(summary->body)["status"], "finished");

  const auto missing = c.Get("/sessions/zzz");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  const auto no_route = c.Get("/nowhere");
  ASSERT_TRUE(no_route);
  EXPECT_EQ(no_route->status, 404);
  EXPECT_EQ(Json::parse(no_route->body)["code"], "not_found");

  const auto preflight = c.Options("/sessions");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
}

TEST_F(LiveServer, ConcurrentSessions) {
  std::vector<std::thread> workers;
  std::vector<int> statuses(3, 0);
  for (int i = 0; i < 3; ++i) {
    workers.emplace_back([&, i] {
      auto c = client();
      const auto r = c.Post("/sessions", create_body("example2_crisp"), "application/json");
      statuses[i] = r ? r->status : -1;
    });
  }
  for (auto& w : workers) w.join();
  for (int s : statuses) EXPECT_EQ(s, 201);
  auto c = client();
  EXPECT_EQ(c.Get("/sessions/s3")->status, 200);
}

}  // namespace
}  // namespace it2fgp::host
