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

#include "vidassist/session/manager.hpp"

#include <algorithm>
#include <cstdio>

#include "vidassist/core/errors.hpp"

namespace vidassist {

void ScriptLibrary::add(ActivityScript script) {
  const std::string id = script.script_id();
  scripts_.insert_or_assign(id, std::move(script));
}

ScriptLibrary ScriptLibrary::load_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorKind::not_found, "not_found", "no script directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  ScriptLibrary lib;
  for (const auto& f : files) lib.add(load_script(f));
  return lib;
}

const ActivityScript& ScriptLibrary::get(const std::string& script_id) const {
  auto it = scripts_.find(script_id);
  if (it == scripts_.end())
    throw Error(ErrorKind::not_found, "unknown_script", "unknown script '" + script_id + "'");
  return it->second;
}

std::vector<std::string> ScriptLibrary::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : scripts_) out.push_back(id);
  return out;
}

Json start_request_to_json(const StartRequest& r) {
  Json j = Json::object();
  if (r.session_id) j["session_id"] = *r.session_id;
  if (r.goal) j["goal"] = *r.goal;
  j["script_id"] = r.script_id;
  j["predictor"] = to_string(r.method);
  return j;
}

StartRequest start_request_from_json(const Json& j) {
  if (!j.is_object()) throw_schema("session request: expected an object");
  StartRequest r;
  if (j.contains("session_id") && !j["session_id"].is_null())
    r.session_id = json_field::string(j, "session_id", "session request");
  if (j.contains("goal") && !j["goal"].is_null())
    r.goal = json_field::string(j, "goal", "session request");
  r.script_id = json_field::string(j, "script_id", "session request");
  if (j.contains("predictor"))
    r.method = predictor_kind_from_string(json_field::string(j, "predictor", "session request"));
  return r;
}

SessionManager::SessionManager(ScriptLibrary scripts, ResourceFactory factory, SessionConfig base,
                               std::optional<std::filesystem::path> event_dir)
    : scripts_(std::move(scripts)),
      factory_(std::move(factory)),
      base_(std::move(base)),
      event_dir_(std::move(event_dir)) {
  if (!factory_) throw_argument("session manager: no resource factory");
}

std::string SessionManager::start(const StartRequest& request) {
  const ActivityScript& script = scripts_.get(request.script_id);
  std::unique_lock lock(mutex_);
  std::string id;
  if (request.session_id) {
    id = *request.session_id;
    if (id.empty()) throw_argument("session_id must not be empty");
  } else {
    do {
      char buf[32];
      std::snprintf(buf, sizeof buf, "session-%04ld", next_id_++);
      id = buf;
    } while (sessions_.count(id));
  }
  if (sessions_.count(id))
    throw Error(ErrorKind::protocol, "duplicate_session", "session '" + id + "' already exists");

  SessionConfig cfg = base_;
  const auto keep = cfg.predictor;
  cfg.predictor = SessionConfig::online_predictor(request.method);
  cfg.predictor.context_limit = keep.context_limit;
  cfg.predictor.examples = keep.examples;
  cfg.predictor.max_new_tokens = keep.max_new_tokens;
  cfg.predictor.attempts = keep.attempts;
  cfg.predictor.goal_conditioning = keep.goal_conditioning;

  auto e = std::make_shared<Entry>();
  std::optional<std::filesystem::path> log_path;
  if (event_dir_) log_path = *event_dir_ / (id + ".jsonl");
  e->events = std::make_shared<EventLog>(log_path);
  e->session = std::make_unique<Session>(id, script, request.goal, cfg,
                                         factory_(script, request.method), e->events);
  e->snapshot = e->session->summary();
  sessions_.emplace(id, std::move(e));
  return id;
}

std::shared_ptr<SessionManager::Entry> SessionManager::entry(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end())
    throw Error(ErrorKind::not_found, "unknown_session", "unknown session '" + id + "'");
  return it->second;
}

template <typename Fn>
auto SessionManager::with_session(const std::string& id, Fn&& fn) {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  struct Refresh {
    Entry& e;
    ~Refresh() {
      std::lock_guard snap(e.snapshot_mutex);
      e.snapshot = e.session->summary();
      if (e.session->finalized()) e.report = e.session->report();
    }
  } refresh{*e};
  return fn(*e->session);
}

void SessionManager::ingest(const std::string& id, const std::vector<Narration>& narrations) {
  with_session(id, [&](Session& s) { s.ingest(narrations); });
}

void SessionManager::ingest(const std::string& id, const std::vector<FrameRef>& frames) {
  with_session(id, [&](Session& s) { s.ingest(frames); });
}

NextStepResult SessionManager::next(const std::string& id) {
  return with_session(id, [&](Session& s) { return s.next_step(); });
}

OutcomeResult SessionManager::outcome(const std::string& id, int index, Outcome outcome) {
  return with_session(id, [&](Session& s) { return s.report_outcome(index, outcome); });
}

SessionReport SessionManager::finalize(const std::string& id, bool participant, bool admin) {
  return with_session(id, [&](Session& s) { return s.finalize(participant, admin); });
}

SessionReport SessionManager::report(const std::string& id) const {
  auto e = entry(id);
  std::lock_guard snap(e->snapshot_mutex);
  if (!e->report)
    throw Error(ErrorKind::protocol, "not_finalized", "session " + id + " is not finalized");
  return *e->report;
}

Json SessionManager::summary(const std::string& id) const {
  auto e = entry(id);
  std::lock_guard snap(e->snapshot_mutex);
  return e->snapshot;
}

std::shared_ptr<EventLog> SessionManager::events(const std::string& id) const {
  return entry(id)->events;
}

std::vector<std::string> SessionManager::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace vidassist
