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

#include "vidassist/session/events.hpp"

#include "vidassist/core/errors.hpp"

namespace vidassist {

Json event_to_json(const SessionEvent& e) {
  return {{"seq", e.seq}, {"type", e.type}, {"data", e.data}};
}

SessionEvent event_from_json(const Json& j, const std::string& where) {
  SessionEvent e;
  e.seq = json_field::integer(j, "seq", where);
  e.type = json_field::string(j, "type", where);
  e.data = json_field::require(j, "data", where);
  return e;
}

EventLog::EventLog(std::optional<std::filesystem::path> path) {
  if (path) {
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    file_.emplace(*path, std::ios::trunc);
    if (!*file_) throw Error(ErrorKind::data, "io_error", "cannot open event log " + path->string());
  }
}

long EventLog::append(std::string type, Json data) {
  std::lock_guard lock(mutex_);
  SessionEvent e{static_cast<long>(events_.size()) + 1, std::move(type), std::move(data)};
  if (file_) *file_ << event_to_json(e).dump() << '\n' << std::flush;
  events_.push_back(std::move(e));
  cv_.notify_all();
  return events_.back().seq;
}

std::vector<SessionEvent> EventLog::since(long after_seq) const {
  std::lock_guard lock(mutex_);
  const auto start = static_cast<std::size_t>(std::max(0L, after_seq));
  if (start >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(start), events_.end()};
}

std::vector<SessionEvent> EventLog::wait_since(long after_seq,
                                               std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] {
    return closed_ || static_cast<long>(events_.size()) > after_seq;
  });
  const auto start = static_cast<std::size_t>(std::max(0L, after_seq));
  if (start >= events_.size()) return {};
  return {events_.begin() + static_cast<std::ptrdiff_t>(start), events_.end()};
}

void EventLog::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  cv_.notify_all();
}

bool EventLog::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

long EventLog::last_seq() const {
  std::lock_guard lock(mutex_);
  return static_cast<long>(events_.size());
}

}  // namespace vidassist
