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

#include "vidassist/service/server.hpp"

#include <cstdio>
#include <cstdlib>

#include <httplib.h>

#include "vidassist/core/errors.hpp"
#include "vidassist/session/resources.hpp"

namespace vidassist {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  res.status = http_status(e.kind());
  if (e.kind() == ErrorKind::provider) res.set_header("Retry-After", "1");
  res.set_content(error_body(e).dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return parse_json_text(req.body, "request body");
}

// Runs a handler and maps every failure onto the error envelope.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const Json::exception& e) {
      send_error(res, Error(ErrorKind::schema, "schema_violation", e.what()));
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(Json{{"error", {{"kind", "internal"}, {"code", "internal"},
                                      {"message", e.what()}}}}.dump(),
                      "application/json");
    }
  };
}

std::vector<FrameRef> frames_from_json(const Json& arr, const std::string& where) {
  if (!arr.is_array()) throw_schema(where + ": expected a list of frames");
  std::vector<FrameRef> frames;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    frames.push_back({json_field::string(arr[i], "ref", at), json_field::number(arr[i], "t", at)});
  }
  return frames;
}

// Accepts "executed", a full outcome name, or "skipped" plus a reason.
Outcome outcome_from_body(const Json& body) {
  const std::string o = json_field::string(body, "outcome", "outcome request");
  if (o == "skipped") {
    const std::string reason = json_field::string(body, "reason", "outcome request");
    return outcome_from_string("skipped_" + reason);
  }
  return outcome_from_string(o);
}

std::string sse_frame(const SessionEvent& e) {
  return "id: " + std::to_string(e.seq) + "\nevent: " + e.type + "\ndata: " +
         event_to_json(e).dump() + "\n\n";
}

}  // namespace

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::argument:
    case ErrorKind::schema: return 400;
    case ErrorKind::not_found: return 404;
    case ErrorKind::protocol: return 409;
    case ErrorKind::data:
    case ErrorKind::budget: return 422;
    case ErrorKind::prediction: return 502;
    case ErrorKind::provider: return 503;
  }
  return 500;
}

Json error_body(const Error& e) {
  return {{"error", {{"kind", to_string(e.kind())}, {"code", e.code()}, {"message", e.what()}}}};
}

ServiceConfig service_config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw_schema("service config: expected an object");
  const std::string where = "service config";
  ServiceConfig c;
  c.base_dir = base_dir;
  if (j.contains("host")) c.host = json_field::string(j, "host", where);
  if (j.contains("port")) c.port = json_field::integer(j, "port", where);
  if (j.contains("scripts")) c.script_dir = resolve(base_dir, json_field::string(j, "scripts", where));
  else c.script_dir = resolve(base_dir, c.script_dir.string());
  if (j.contains("run_dir")) c.run_dir = resolve(base_dir, json_field::string(j, "run_dir", where));
  else c.run_dir = resolve(base_dir, c.run_dir.string());
  if (j.contains("pool")) c.pool = resolve(base_dir, json_field::string(j, "pool", where));
  if (j.contains("providers")) c.providers = j["providers"];
  if (j.contains("stream")) c.session.stream = stream_config_from_json(j["stream"], where + ".stream");
  if (j.contains("token")) c.token = json_field::string(j, "token", where);
  return c;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  ServiceConfig c = service_config_from_json(parse_json_text(read_text_file(path), path.string()),
                                             path.parent_path());
  apply_env_overrides(c);
  return c;
}

void apply_env_overrides(ServiceConfig& cfg) {
  if (const char* v = std::getenv("VIDASSIST_HOST")) cfg.host = v;
  if (const char* v = std::getenv("VIDASSIST_PORT")) {
    char* end = nullptr;
    const long port = std::strtol(v, &end, 10);
    if (*v == '\0' || *end != '\0' || port < 0 || port > 65535)
      throw_argument(std::string("VIDASSIST_PORT is not a port: ") + v);
    cfg.port = static_cast<int>(port);
  }
  if (const char* v = std::getenv("VIDASSIST_RUN_DIR")) cfg.run_dir = v;
  if (const char* v = std::getenv("VIDASSIST_API_TOKEN")) cfg.token = v;
}

std::unique_ptr<SessionManager> make_manager(const ServiceConfig& cfg) {
  return std::make_unique<SessionManager>(ScriptLibrary::load_dir(cfg.script_dir),
                                          spec_resource_factory(cfg.providers, cfg.base_dir, cfg.pool),
                                          cfg.session, cfg.run_dir / "events");
}

Service::Service(SessionManager& manager, std::filesystem::path bench_base,
                 std::optional<std::string> token, std::optional<std::filesystem::path> run_dir)
    : manager_(manager),
      bench_base_(std::move(bench_base)),
      token_(std::move(token)),
      run_dir_(std::move(run_dir)),
      server_(std::make_unique<httplib::Server>()) {
  routes();
}

Service::~Service() {
  stop();
  for (auto& w : workers_)
    if (w.joinable()) w.join();
}

void Service::routes() {
  auto& s = *server_;

  if (token_) {
    s.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      if (req.get_header_value("Authorization") == "Bearer " + *token_)
        return httplib::Server::HandlerResponse::Unhandled;
      res.status = 401;
      res.set_content(Json{{"error", {{"kind", "argument"}, {"code", "unauthorized"},
                                      {"message", "missing or wrong bearer token"}}}}.dump(),
                      "application/json");
      return httplib::Server::HandlerResponse::Handled;
    });
  }

  s.Get("/health", guarded([](const auto&, auto& res) { send_json(res, {{"status", "ok"}}); }));

  s.Get("/sessions", guarded([this](const auto&, auto& res) {
    send_json(res, {{"sessions", manager_.ids()}});
  }));

  s.Post("/sessions", guarded([this](const auto& req, auto& res) {
    const std::string id = manager_.start(start_request_from_json(parse_body(req)));
    send_json(res, {{"session_id", id}}, 201);
  }));

  s.Post(R"(/sessions/([^/]+)/ingest)", guarded([this](const auto& req, auto& res) {
    const std::string id = req.matches[1];
    const Json body = parse_body(req);
    std::size_t n = 0;
    if (body.contains("narrations")) {
      const Json& arr = body["narrations"];
      if (!arr.is_array()) throw_schema("ingest: 'narrations' must be a list");
      std::vector<Narration> narrations;
      for (std::size_t i = 0; i < arr.size(); ++i)
        narrations.push_back(narration_from_json(arr[i], "narrations[" + std::to_string(i) + "]"));
      manager_.ingest(id, narrations);
      n = narrations.size();
    } else if (body.contains("frames") || body.contains("frame_batch_ref")) {
      Json arr;
      if (body.contains("frames")) {
        arr = body["frames"];
      } else {
        if (!run_dir_) throw_argument("frame batches need a run directory");
        const std::string ref = json_field::string(body, "frame_batch_ref", "ingest");
        if (ref.find("..") != std::string::npos) throw_argument("frame_batch_ref must stay in the run directory");
        const auto path = *run_dir_ / "frames" / ref;
        arr = parse_json_text(read_text_file(path), path.string());
      }
      const auto frames = frames_from_json(arr, "frames");
      manager_.ingest(id, frames);
      n = frames.size();
    } else {
      throw_schema("ingest: expected 'narrations', 'frames' or 'frame_batch_ref'");
    }
    send_json(res, {{"accepted", n}}, 202);
  }));

  s.Post(R"(/sessions/([^/]+)/next)", guarded([this](const auto& req, auto& res) {
    const NextStepResult r = manager_.next(req.matches[1]);
    send_json(res, {{"suggestion_index", r.index},
                    {"instruction", r.instruction},
                    {"done", r.done},
                    {"system_error", r.system_error}});
  }));

  s.Post(R"(/sessions/([^/]+)/outcome)", guarded([this](const auto& req, auto& res) {
    const Json body = parse_body(req);
    const int index = json_field::integer(body, "index", "outcome request");
    send_json(res, outcome_result_to_json(manager_.outcome(req.matches[1], index, outcome_from_body(body))));
  }));

  s.Post(R"(/sessions/([^/]+)/finalize)", guarded([this](const auto& req, auto& res) {
    const Json body = parse_body(req);
    const bool participant = json_field::boolean(body, "participant", "finalize request");
    const bool admin = json_field::boolean(body, "admin", "finalize request");
    send_json(res, session_report_to_json(manager_.finalize(req.matches[1], participant, admin)));
  }));

  s.Get(R"(/sessions/([^/]+))", guarded([this](const auto& req, auto& res) {
    send_json(res, manager_.summary(req.matches[1]));
  }));

  s.Get(R"(/sessions/([^/]+)/report)", guarded([this](const auto& req, auto& res) {
    send_json(res, session_report_to_json(manager_.report(req.matches[1])));
  }));

  // Server-sent events, resumable with Last-Event-ID or ?after=N.
  s.Get(R"(/sessions/([^/]+)/events)", guarded([this](const auto& req, auto& res) {
    std::shared_ptr<EventLog> log = manager_.events(req.matches[1]);
    long after = 0;
    const std::string last = req.has_param("after") ? req.get_param_value("after")
                                                    : req.get_header_value("Last-Event-ID");
    if (!last.empty()) {
      char* end = nullptr;
      after = std::strtol(last.c_str(), &end, 10);
      if (*end != '\0' || after < 0) throw_argument("event cursor must be a sequence number");
    }
    auto cursor = std::make_shared<long>(after);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream", [this, log, cursor](std::size_t, httplib::DataSink& sink) {
          const auto events = log->wait_since(*cursor, std::chrono::milliseconds(250));
          for (const auto& e : events) {
            const std::string frame = sse_frame(e);
            if (!sink.write(frame.data(), frame.size())) return false;
            *cursor = e.seq;
          }
          if ((events.empty() && log->closed()) || stopping_) sink.done();
          return true;
        });
  }));

  s.Post(R"(/bench/(lta|vpa|rerun))", guarded([this](const auto& req, auto& res) {
    bench::BenchRequest r = bench::bench_request_from_json(req.matches[1], parse_body(req), bench_base_);
    send_json(res, {{"job_id", submit_job(std::move(r))}, {"status", "running"}}, 202);
  }));

  s.Get(R"(/jobs/([^/]+))", guarded([this](const auto& req, auto& res) {
    std::shared_ptr<Job> job;
    {
      std::lock_guard lock(jobs_mutex_);
      auto it = jobs_.find(req.matches[1]);
      if (it == jobs_.end())
        throw Error(ErrorKind::not_found, "unknown_job", "unknown job '" + std::string(req.matches[1]) + "'");
      job = it->second;
    }
    std::lock_guard lock(jobs_mutex_);
    if (job->status == "running") {
      send_json(res, {{"job_id", std::string(req.matches[1])}, {"status", "running"}}, 202);
    } else if (job->report) {
      send_json(res, metrics::report_to_json(*job->report));
    } else {
      send_json(res, *job->error, job->http_status);
    }
  }));
}

std::string Service::submit_job(bench::BenchRequest request) {
  auto job = std::make_shared<Job>();
  std::string id;
  {
    std::lock_guard lock(jobs_mutex_);
    char buf[32];
    std::snprintf(buf, sizeof buf, "job-%04ld", next_job_++);
    id = buf;
    jobs_[id] = job;
    if (run_dir_ && !request.run.log_dir) request.run.log_dir = *run_dir_ / "jobs" / id;
  }
  workers_.emplace_back([this, job, request = std::move(request)] {
    std::optional<metrics::MetricReport> report;
    std::optional<Json> error;
    int status = 200;
    try {
      report = bench::run_bench(request);
    } catch (const Error& e) {
      error = error_body(e);
      status = http_status(e.kind());
    } catch (const std::exception& e) {
      error = Json{{"error", {{"kind", "internal"}, {"code", "internal"}, {"message", e.what()}}}};
      status = 500;
    }
    std::lock_guard lock(jobs_mutex_);
    job->report = std::move(report);
    job->error = std::move(error);
    job->http_status = status;
    job->status = job->report ? "done" : "failed";
  });
  return id;
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::argument, "bind_failed", "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port))
    throw Error(ErrorKind::argument, "bind_failed",
                "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void Service::listen() { server_->listen_after_bind(); }

int Service::start_background(const std::string& host, int port) {
  const int bound = bind(host, port);
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
  return bound;
}

void Service::stop() {
  stopping_ = true;
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace vidassist
