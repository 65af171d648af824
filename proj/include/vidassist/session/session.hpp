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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vidassist/history/stream.hpp"
#include "vidassist/pipelines/predictor.hpp"
#include "vidassist/session/events.hpp"
#include "vidassist/session/matching.hpp"
#include "vidassist/session/protocol.hpp"

namespace vidassist {

struct SessionConfig {
  PredictorConfig predictor = online_predictor(PredictorKind::socratic);
  StreamConfig stream;
  double match_threshold = kMatchThreshold;
  double done_threshold = kDoneThreshold;

  /// Open-set VPA layout with Z = 1, as used for step-by-step assistance.
  static PredictorConfig online_predictor(PredictorKind kind);
};

/// Model handles one session talks to. Stateful stubs need one set per
/// session, so the manager builds these per session.
struct SessionResources {
  Providers providers;
  std::shared_ptr<const ExamplePool> pool;
  std::shared_ptr<EmbeddingCache> cache;  // built from providers.embedder when null
};

struct SkipBreakdown {
  int redundant = 0;
  int infeasible = 0;
  int irrelevant = 0;

  int total() const noexcept { return redundant + infeasible + irrelevant; }
  friend bool operator==(const SkipBreakdown&, const SkipBreakdown&) = default;
};

SkipBreakdown count_skips(const std::vector<SuggestionRecord>& suggestions);

struct SessionReport {
  std::string session_id;
  std::string script_id;
  std::string method;  // predictor kind
  std::string goal;
  bool success = false;
  std::optional<EndReason> end_reason;
  double online_miou = 0.0;
  SkipBreakdown skip_breakdown;
  std::vector<SuggestionRecord> suggestions;
  bool end_detected = false;
  int executed_count = 0;
  std::optional<bool> participant_rating;
  std::optional<bool> admin_rating;
  std::vector<Narration> partial_progress;  // history before assistance began

  friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

Json session_report_to_json(const SessionReport& r);
SessionReport session_report_from_json(const Json& j, const std::string& where = "report");
void write_session_report(const SessionReport& r, const std::filesystem::path& path);
SessionReport read_session_report(const std::filesystem::path& path);
/// Every *.json report under `dir`, sorted by file name.
std::vector<SessionReport> read_session_reports(const std::filesystem::path& dir);

/// Online IoU of a finished suggestion log: done-step and system-error
/// turns are left out; everything else is scored with step_set_iou.
double online_miou(const std::vector<SuggestionRecord>& suggestions, const ActivityScript& script,
                   EmbeddingCache& cache, double threshold = kMatchThreshold);

struct NextStepResult {
  int index = 0;
  std::string instruction;
  bool done = false;
  bool system_error = false;
};

struct OutcomeResult {
  Phase phase = Phase::assisting;
  int consecutive_skips = 0;
  int executed_count = 0;
  std::optional<EndReason> end_reason;
};

Json outcome_result_to_json(const OutcomeResult& r);

/// Instruction given back when a prediction fails.
inline constexpr const char* kRepeatRequest = "please repeat the request";

/// One assisted session. Not thread-safe; SessionManager serializes calls.
class Session {
 public:
  /// Throws Error(argument) when both `goal` and the script goal are empty.
  Session(std::string session_id, ActivityScript script, std::optional<std::string> goal,
          SessionConfig cfg, SessionResources resources,
          std::shared_ptr<EventLog> events = std::make_shared<EventLog>());

  const std::string& id() const noexcept { return id_; }
  const ActivityScript& script() const noexcept { return script_; }
  const std::string& goal() const noexcept { return goal_; }
  const SessionConfig& config() const noexcept { return cfg_; }
  const ProtocolState& protocol() const noexcept { return protocol_; }
  Phase phase() const noexcept { return protocol_.phase(); }
  const std::vector<SuggestionRecord>& suggestions() const noexcept { return suggestions_; }
  const VisualHistory& history() const noexcept { return history_; }
  double media_time() const noexcept { return media_time_; }
  int summarizations() const noexcept { return summarizations_; }
  EventLog& events() const noexcept { return *events_; }

  /// Buffers narrations (simulation mode); no model calls happen here.
  /// Rejects out-of-order start times and ingest after completion.
  void ingest(const std::vector<Narration>& narrations);
  /// Buffers raw frames; they are segmented and narrated lazily.
  void ingest(const std::vector<FrameRef>& frames);

  /// Re-encodes the whole buffer, predicts one step and records it as the
  /// pending suggestion. Prediction failures become a system-error turn.
  NextStepResult next_step();
  OutcomeResult report_outcome(int index, Outcome outcome);
  /// Requires a completed session.
  SessionReport finalize(bool participant, bool admin);
  /// Report of a finalized session.
  const SessionReport& report() const;
  bool finalized() const noexcept { return report_.has_value(); }
  /// Snapshot for status endpoints.
  Json summary() const;

 private:
  EncodedHistory encode();

  std::string id_;
  ActivityScript script_;
  std::string goal_;
  SessionConfig cfg_;
  SessionResources res_;
  std::shared_ptr<EventLog> events_;
  std::unique_ptr<Predictor> predictor_;
  ProtocolState protocol_;

  std::vector<Narration> narration_buffer_;
  std::vector<FrameRef> frame_buffer_;
  std::vector<Narration> partial_progress_;
  VisualHistory history_;
  std::vector<SuggestionRecord> suggestions_;
  double media_time_ = 0.0;
  int summarizations_ = 0;
  std::optional<SessionReport> report_;
};

}  // namespace vidassist
