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

#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "vidassist/bench/jobs.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/session/manager.hpp"

namespace httplib {
class Server;
}

namespace vidassist {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path script_dir = "data/scripts";
  std::filesystem::path run_dir = "runs";
  std::optional<std::filesystem::path> pool;
  Json providers = Json::object();  // build_providers spec used per session
  SessionConfig session;
  std::optional<std::string> token;  // static bearer token; none disables auth
  std::filesystem::path base_dir;    // resolves relative paths
};

/// Reads the service config file. VIDASSIST_HOST, VIDASSIST_PORT,
/// VIDASSIST_RUN_DIR and VIDASSIST_API_TOKEN override the file.
ServiceConfig service_config_from_json(const Json& j, const std::filesystem::path& base_dir);
ServiceConfig load_service_config(const std::filesystem::path& path);
void apply_env_overrides(ServiceConfig& cfg);

/// HTTP status for an error kind: 400, 404, 409, 422, 502 or 503.
int http_status(ErrorKind kind) noexcept;
Json error_body(const Error& e);

/// JSON-over-HTTP front of a SessionManager plus asynchronous benchmark
/// jobs. Handlers only parse, delegate and serialize.
class Service {
 public:
  /// `bench_base` resolves relative paths in /bench request bodies.
  Service(SessionManager& manager, std::filesystem::path bench_base,
          std::optional<std::string> token = std::nullopt,
          std::optional<std::filesystem::path> run_dir = std::nullopt);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// bind() then listen() on a background thread.
  int start_background(const std::string& host, int port);
  void stop();

 private:
  struct Job {
    std::string status = "running";  // running | done | failed
    std::optional<metrics::MetricReport> report;
    std::optional<Json> error;
    int http_status = 200;
  };

  void routes();
  std::string submit_job(bench::BenchRequest request);

  SessionManager& manager_;
  std::filesystem::path bench_base_;
  std::optional<std::string> token_;
  std::optional<std::filesystem::path> run_dir_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::atomic<bool> stopping_{false};

  std::mutex jobs_mutex_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> workers_;
  long next_job_ = 1;
};

/// Builds the session manager a config describes.
std::unique_ptr<SessionManager> make_manager(const ServiceConfig& cfg);

}  // namespace vidassist
