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

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vidassist/core/io.hpp"

namespace vidassist {

struct SessionEvent {
  long seq = 0;  // 1-based, monotone per session
  std::string type;
  Json data;
};

Json event_to_json(const SessionEvent& e);
SessionEvent event_from_json(const Json& j, const std::string& where);

/// Append-only per-session event log. Events carry media time only, never
/// wall-clock time, so a stub-driven replay produces the same log.
/// Readers may block until new events arrive.
class EventLog {
 public:
  /// Mirrors every event to `path` as JSONL when set.
  explicit EventLog(std::optional<std::filesystem::path> path = std::nullopt);

  long append(std::string type, Json data);
  std::vector<SessionEvent> since(long after_seq) const;
  /// Waits up to `timeout` for an event past `after_seq`, or until close().
  std::vector<SessionEvent> wait_since(long after_seq, std::chrono::milliseconds timeout) const;
  /// Wakes waiters; no more events will follow.
  void close();
  bool closed() const;
  long last_seq() const;

 private:
  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::vector<SessionEvent> events_;
  bool closed_ = false;
  std::optional<std::ofstream> file_;
};

}  // namespace vidassist
