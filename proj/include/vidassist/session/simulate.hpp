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

#include <string>
#include <vector>

#include "vidassist/session/manager.hpp"

namespace vidassist {

/// The calls a participant's client makes; implemented in-process here and
/// over HTTP by the service client.
class SessionDriver {
 public:
  virtual ~SessionDriver() = default;
  virtual std::string start(const StartRequest& request) = 0;
  virtual void ingest(const std::string& id, const std::vector<Narration>& narrations) = 0;
  virtual NextStepResult next(const std::string& id) = 0;
  virtual OutcomeResult outcome(const std::string& id, int index, Outcome outcome) = 0;
  virtual SessionReport finalize(const std::string& id, bool participant, bool admin) = 0;
};

class InProcessDriver final : public SessionDriver {
 public:
  explicit InProcessDriver(SessionManager& manager) : manager_(manager) {}
  std::string start(const StartRequest& request) override { return manager_.start(request); }
  void ingest(const std::string& id, const std::vector<Narration>& narrations) override {
    manager_.ingest(id, narrations);
  }
  NextStepResult next(const std::string& id) override { return manager_.next(id); }
  OutcomeResult outcome(const std::string& id, int index, Outcome outcome) override {
    return manager_.outcome(id, index, outcome);
  }
  SessionReport finalize(const std::string& id, bool participant, bool admin) override {
    return manager_.finalize(id, participant, admin);
  }

 private:
  SessionManager& manager_;
};

struct SimPolicy {
  double match_threshold = kMatchThreshold;
  int narrations_per_step = 2;  // near-duplicates the clusterer should merge
  double step_seconds = 10.0;
  int max_assistant_errors = 3;  // consecutive failed turns before aborting
};

/// Mechanical participant. Completes the partial-progress steps, then
/// follows the assistant: a matched step that is new and whose
/// predecessors are done is executed (and narrated); already done is
/// skipped as redundant; blocked or impossible in this variant as
/// infeasible; unmatched as irrelevant. A done step is executed when every
/// required step is finished and skipped as infeasible otherwise. Both
/// ratings are true iff every non-optional step was executed.
/// Throws Error(provider, "assistant_failed") after max_assistant_errors
/// failed turns in a row.
SessionReport simulate_user(SessionDriver& driver, const StartRequest& request,
                            const ActivityScript& script, EmbeddingCache& user_cache,
                            const SimPolicy& policy = {});

/// Cyclic Latin square: trial i runs `methods` rotated left by i, so with
/// two methods the order alternates between trials.
std::vector<std::vector<PredictorKind>> latin_square(int trials,
                                                     const std::vector<PredictorKind>& methods);

}  // namespace vidassist
