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

#include <mutex>
#include <set>
#include <string>

#include "vidassist/providers/stubs.hpp"

namespace vidassist::stubs {

/// How a ScriptOracleLlm deviates from the script.
enum class OracleMode {
  perfect,      // next precedence-feasible step, then the done step
  stuck,        // always the first (already completed) step
  misordered,   // once per history, the last remaining step first
  repeat_once,  // once per instance, a completed step after the first assisted step
  irrelevant,   // an action unrelated to the activity
};

const char* to_string(OracleMode mode) noexcept;
OracleMode oracle_mode_from_string(std::string_view text);

/// Planner that reads the script. Progress is recovered from the prompt:
/// a step counts as done when its description appears in the query
/// history. Summarization prompts are answered by echoing the distinct
/// narrations; goal prompts with the script goal at confidence 1.
///
/// The misordered and repeat_once modes keep state, so use one instance
/// per session.
class ScriptOracleLlm final : public StubLanguageModel {
 public:
  ScriptOracleLlm(ActivityScript script, OracleMode mode, int context_limit = 2048);

  const ActivityScript& script() const noexcept { return script_; }
  OracleMode mode() const noexcept { return mode_; }

 protected:
  std::string respond(const CompletionRequest& request) const override;

 private:
  std::vector<std::string> plan(const std::string& query, int z) const;

  ActivityScript script_;
  OracleMode mode_;
  mutable std::mutex state_mutex_;
  mutable std::set<std::string> deviated_;  // query sections already answered off-script
};

/// Suggestion the oracle gives once the activity is finished.
inline constexpr const char* kOracleDoneText = "Serve the dish";
/// Suggestion of the irrelevant mode.
inline constexpr const char* kOracleIrrelevantText = "Wash the car in the driveway";

/// "A person " + description with its first letter lowercased; the
/// narration a simulated user emits after executing a step.
std::string step_narration(const ScriptStep& step);

}  // namespace vidassist::stubs
