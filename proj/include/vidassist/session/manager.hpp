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

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "vidassist/session/session.hpp"

namespace vidassist {

/// Scripts by id.
class ScriptLibrary {
 public:
  void add(ActivityScript script);
  /// Loads every *.json script in `dir`.
  static ScriptLibrary load_dir(const std::filesystem::path& dir);
  /// Throws Error(not_found).
  const ActivityScript& get(const std::string& script_id) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, ActivityScript> scripts_;
};

/// Builds the model handles for one new session.
using ResourceFactory =
    std::function<SessionResources(const ActivityScript& script, PredictorKind method)>;

struct StartRequest {
  std::optional<std::string> session_id;  // generated when absent
  std::optional<std::string> goal;        // defaults to the script goal
  std::string script_id;
  PredictorKind method = PredictorKind::socratic;
};

Json start_request_to_json(const StartRequest& r);
StartRequest start_request_from_json(const Json& j);

/// Owns live sessions. Calls on one session are serialized by a
/// per-session mutex; distinct sessions proceed in parallel. Status
/// snapshots are refreshed after every mutation so reads never wait on a
/// running prediction.
class SessionManager {
 public:
  SessionManager(ScriptLibrary scripts, ResourceFactory factory, SessionConfig base = {},
                 std::optional<std::filesystem::path> event_dir = std::nullopt);

  /// Throws Error(protocol, "duplicate_session") for a reused id.
  std::string start(const StartRequest& request);

  void ingest(const std::string& id, const std::vector<Narration>& narrations);
  void ingest(const std::string& id, const std::vector<FrameRef>& frames);
  NextStepResult next(const std::string& id);
  OutcomeResult outcome(const std::string& id, int index, Outcome outcome);
  SessionReport finalize(const std::string& id, bool participant, bool admin);
  SessionReport report(const std::string& id) const;
  Json summary(const std::string& id) const;
  std::shared_ptr<EventLog> events(const std::string& id) const;
  std::vector<std::string> ids() const;
  const ScriptLibrary& scripts() const noexcept { return scripts_; }

 private:
  struct Entry {
    std::mutex mutex;  // serializes session operations
    std::unique_ptr<Session> session;
    std::shared_ptr<EventLog> events;
    mutable std::mutex snapshot_mutex;
    Json snapshot;
    std::optional<SessionReport> report;
  };

  std::shared_ptr<Entry> entry(const std::string& id) const;
  template <typename Fn>
  auto with_session(const std::string& id, Fn&& fn);

  ScriptLibrary scripts_;
  ResourceFactory factory_;
  SessionConfig base_;
  std::optional<std::filesystem::path> event_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  long next_id_ = 1;
};

}  // namespace vidassist
