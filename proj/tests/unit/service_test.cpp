// Copyright 2026 The vidassist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "test_support.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/session/resources.hpp"
#include "vidassist/service/client.hpp"
#include "vidassist/service/server.hpp"

namespace vidassist {
namespace {

using testing_support::data_dir;

std::unique_ptr<SessionManager> fresh_manager(const std::string& mode = "perfect") {
  return std::make_unique<SessionManager>(
      ScriptLibrary::load_dir(data_dir() / "scripts"),
      spec_resource_factory(oracle_provider_spec(mode, data_dir() / "synonyms.json"), data_dir(),
                            data_dir() / "online_pool.jsonl"));
}

// A service on a free port around its own manager.
struct Running {
  explicit Running(std::optional<std::string> token = std::nullopt, const std::string& mode = "perfect")
      : manager(fresh_manager(mode)), service(*manager, data_dir() / "mini", std::move(token)) {
    port = service.start_background("127.0.0.1", 0);
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(10, 0);
    return c;
  }
  std::unique_ptr<SessionManager> manager;
  Service service;
  int port = 0;
};

Json body_of(const httplib::Result& r) { return Json::parse(r->body); }

httplib::Result post(httplib::Client& c, const std::string& path, const Json& body) {
  return c.Post(path, body.dump(), "application/json");
}

TEST(StatusMap, OneStatusPerKind) {
  EXPECT_EQ(http_status(ErrorKind::argument), 400);
  EXPECT_EQ(http_status(ErrorKind::schema), 400);
  EXPECT_EQ(http_status(ErrorKind::not_found), 404);
  EXPECT_EQ(http_status(ErrorKind::protocol), 409);
  EXPECT_EQ(http_status(ErrorKind::data), 422);
  EXPECT_EQ(http_status(ErrorKind::budget), 422);
  EXPECT_EQ(http_status(ErrorKind::prediction), 502);
  EXPECT_EQ(http_status(ErrorKind::provider), 503);
  const auto b = error_body(Error(ErrorKind::protocol, "pending_suggestion", "m"));
  EXPECT_EQ(b["error"]["kind"], "protocol");
  EXPECT_EQ(b["error"]["code"], "pending_suggestion");
}

TEST(Service, SessionLifecycleOverHttp) {
  Running svc;
  auto c = svc.client();
  EXPECT_EQ(c.Get("/health")->status, 200);

  auto r = post(c, "/sessions", {{"script_id", "latte"}, {"method", "socratic"}, {"session_id", "h1"}});
  ASSERT_EQ(r->status, 201);
  EXPECT_EQ(body_of(r)["session_id"], "h1");
  EXPECT_EQ(post(c, "/sessions", {{"script_id", "latte"}, {"session_id", "h1"}})->status, 409);

  Json narrations = Json::array();
  narrations.push_back({{"text", "A person gets a cup and put it in the espresso machine"}, {"span", {0, 10}}});
  r = post(c, "/sessions/h1/ingest", {{"narrations", narrations}});
  EXPECT_EQ(r->status, 202);
  EXPECT_EQ(body_of(r)["accepted"], 1);

  r = post(c, "/sessions/h1/next", Json::object());
  ASSERT_EQ(r->status, 200);
  const int index = body_of(r)["suggestion_index"];
  r = post(c, "/sessions/h1/next", Json::object());
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body_of(r)["error"]["code"], "pending_suggestion");

  r = post(c, "/sessions/h1/outcome", {{"index", index}, {"outcome", "skipped"}, {"reason", "redundant"}});
  ASSERT_EQ(r->status, 200);
  EXPECT_EQ(body_of(r)["consecutive_skips"], 1);
  r = post(c, "/sessions/h1/outcome", {{"index", index}, {"outcome", "executed"}});
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(body_of(r)["error"]["code"], "no_pending_suggestion");

  EXPECT_EQ(post(c, "/sessions/h1/finalize", {{"participant", true}, {"admin", true}})->status, 409);
  EXPECT_EQ(c.Get("/sessions/h1")->status, 200);
  EXPECT_EQ(body_of(c.Get("/sessions"))["sessions"], Json::array({"h1"}));
}

TEST(Service, ClientErrorsMapToStatuses) {
  Running svc;
  auto c = svc.client();
  auto r = post(c, "/sessions/ghost/next", Json::object());
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(body_of(r)["error"]["code"], "unknown_session");
  EXPECT_EQ(c.Post("/sessions", "{not json", "application/json")->status, 400);
  EXPECT_EQ(post(c, "/sessions", {{"script_id", 3}})->status, 400);
  post(c, "/sessions", {{"script_id", "blt"}, {"session_id", "b"}});
  Json inverted = Json::array();
  inverted.push_back({{"text", "x"}, {"span", {5, 1}}});
  EXPECT_EQ(post(c, "/sessions/b/ingest", {{"narrations", inverted}})->status, 400);
  Json late = Json::array(), early = Json::array();
  late.push_back({{"text", "A person slices bread"}, {"span", {5, 6}}});
  early.push_back({{"text", "A person toasts bread"}, {"span", {1, 2}}});
  EXPECT_EQ(post(c, "/sessions/b/ingest", {{"narrations", late}})->status, 202);
  auto r2 = post(c, "/sessions/b/ingest", {{"narrations", early}});
  EXPECT_EQ(r2->status, 422);
  EXPECT_EQ(body_of(r2)["error"]["code"], "out_of_order");
  EXPECT_EQ(post(c, "/sessions/b/ingest", Json::object())->status, 400);
  EXPECT_EQ(c.Get("/jobs/none")->status, 404);
  EXPECT_EQ(c.Get("/sessions/b/report")->status, 409);
}

TEST(Service, BearerTokenIsEnforced) {
  Running svc(std::string("s3cret"));
  auto c = svc.client();
  EXPECT_EQ(c.Get("/health")->status, 401);
  c.set_bearer_token_auth("s3cret");
  EXPECT_EQ(c.Get("/health")->status, 200);
  HttpDriver driver("127.0.0.1", svc.port, std::string("s3cret"));
  EXPECT_EQ(driver.get("/health")["status"], "ok");
}

TEST(Service, HttpDriverMatchesInProcessByteForByte) {
  auto cache = testing_support::synonym_cache();
  for (const std::string mode : {"perfect", "misordered", "stuck"}) {
    for (const std::string script_id : {"latte", "caprese", "blt"}) {
      const StartRequest req{std::string("p-") + script_id, std::nullopt, script_id, PredictorKind::vclm};
      auto local = fresh_manager(mode);
      InProcessDriver in(*local);
      const auto a = simulate_user(in, req, local->scripts().get(script_id), *cache);

      Running svc(std::nullopt, mode);
      HttpDriver http("127.0.0.1", svc.port);
      const auto b = simulate_user(http, req, svc.manager->scripts().get(script_id), *cache);
      EXPECT_EQ(session_report_to_json(a).dump(), session_report_to_json(b).dump()) << mode << "/" << script_id;
      EXPECT_EQ(session_report_to_json(http.report(req.session_id.value())).dump(),
                session_report_to_json(b).dump());
    }
  }
}

TEST(Service, HttpDriverRebuildsTypedErrors) {
  Running svc;
  HttpDriver http("127.0.0.1", svc.port);
  try {
    http.next("ghost");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_found);
    EXPECT_EQ(e.code(), "unknown_session");
  }
}

TEST(Service, EventStreamIsResumable) {
  Running svc;
  auto cache = testing_support::synonym_cache();
  HttpDriver http("127.0.0.1", svc.port);
  const auto report =
      simulate_user(http, {std::string("ev"), std::nullopt, "caprese", PredictorKind::socratic},
                    svc.manager->scripts().get("caprese"), *cache);
  ASSERT_TRUE(report.success);

  auto c = svc.client();
  auto all = c.Get("/sessions/ev/events");
  ASSERT_EQ(all->status, 200);
  EXPECT_EQ(all->get_header_value("Content-Type"), "text/event-stream");
  EXPECT_EQ(all->body.rfind("id: 1\nevent: session_started\ndata: ", 0), 0u);
  EXPECT_NE(all->body.find("event: finalized"), std::string::npos);

  const long last = svc.manager->events("ev")->last_seq();
  auto tail = c.Get("/sessions/ev/events?after=" + std::to_string(last - 1));
  EXPECT_EQ(tail->body.rfind("id: " + std::to_string(last) + "\nevent: finalized", 0), 0u);
  httplib::Headers h = {{"Last-Event-ID", std::to_string(last - 1)}};
  EXPECT_EQ(c.Get("/sessions/ev/events", h)->body, tail->body);
  EXPECT_EQ(c.Get("/sessions/ev/events?after=x")->status, 400);
}

TEST(Service, BenchJobsRunAsynchronously) {
  Running svc;
  auto c = svc.client();
  const Json cfg = parse_json_text(read_text_file(data_dir() / "mini" / "bench_vpa_cheat.json"), "cfg");
  auto r = post(c, "/bench/vpa", cfg);
  ASSERT_EQ(r->status, 202);
  const std::string job = body_of(r)["job_id"];
  int status = 202;
  Json report;
  for (int i = 0; i < 200 && status == 202; ++i) {
    auto j = c.Get("/jobs/" + job);
    status = j->status;
    report = body_of(j);
    if (status == 202) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_EQ(status, 200);
  EXPECT_DOUBLE_EQ(report["aggregates"]["sr"].get<double>(), 1.0);

  auto bad = post(c, "/bench/lta", {{"dataset", "missing.jsonl"}, {"vocabulary", "vocab.json"}});
  std::string bad_id = bad->status == 202 ? body_of(bad)["job_id"].get<std::string>() : "";
  if (!bad_id.empty()) {
    int s = 202;
    for (int i = 0; i < 200 && s == 202; ++i) {
      s = c.Get("/jobs/" + bad_id)->status;
      if (s == 202) std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    EXPECT_GE(s, 400);
  } else {
    EXPECT_GE(bad->status, 400);
  }
}

TEST(ServiceConfig, ReadsFileAndEnvironment) {
  const auto cfg = load_service_config(data_dir() / "service.json");
  EXPECT_TRUE(std::filesystem::exists(cfg.script_dir));
  ServiceConfig c = cfg;
  setenv("VIDASSIST_PORT", "9191", 1);
  setenv("VIDASSIST_API_TOKEN", "tok", 1);
  apply_env_overrides(c);
  unsetenv("VIDASSIST_PORT");
  unsetenv("VIDASSIST_API_TOKEN");
  EXPECT_EQ(c.port, 9191);
  EXPECT_EQ(c.token, "tok");
  EXPECT_THROW(service_config_from_json(Json{{"port", "x"}}, data_dir()), Error);
}

}  // namespace
}  // namespace vidassist
