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

#include <optional>
#include <string>
#include <string_view>

#include "vidassist/core/types.hpp"

namespace vidassist {

enum class Phase { partial_progress, assisting, completed };
enum class EndReason { done_step, three_skips, step_cap };

const char* to_string(Phase phase) noexcept;
const char* to_string(EndReason reason) noexcept;
Phase phase_from_string(std::string_view text);
EndReason end_reason_from_string(std::string_view text);

inline constexpr int kSkipLimit = 3;

/// The assisted-session state machine without any model in the loop:
/// suggestions are issued one at a time, each resolved by exactly one
/// outcome, and termination is checked after every outcome in the order
/// done step, three consecutive skips, executed-step cap.
class ProtocolState {
 public:
  explicit ProtocolState(int n_eval);

  /// Moves partial_progress to assisting; no-op once assisting.
  void begin_assistance();
  /// Issues a suggestion and returns its index. Throws Error(protocol)
  /// "session_completed" or "pending_suggestion".
  int issue(bool done);
  /// Records a failed turn: it gets an index but never becomes pending.
  int issue_system_error();
  /// Resolves the pending suggestion. Throws Error(protocol)
  /// "no_pending_suggestion" when nothing is pending or `index` is stale,
  /// Error(argument) for a non-terminal outcome.
  void resolve(int index, Outcome outcome);

  Phase phase() const noexcept { return phase_; }
  std::optional<int> pending() const noexcept { return pending_; }
  int consecutive_skips() const noexcept { return consecutive_skips_; }
  int executed_count() const noexcept { return executed_count_; }
  int issued() const noexcept { return next_index_; }
  int step_cap() const noexcept { return n_eval_ + 2; }
  std::optional<EndReason> end_reason() const noexcept { return end_reason_; }

  /// Upper bound on suggestions (system errors excluded) before any
  /// session ends: every executed run is capped and every skip run is
  /// shorter than kSkipLimit.
  int suggestion_bound() const noexcept { return step_cap() + kSkipLimit * step_cap(); }
  /// Empty when all invariants hold, else a description of the first
  /// violated one.
  std::string check_invariants() const;

 private:
  void require_open() const;

  int n_eval_;
  Phase phase_ = Phase::partial_progress;
  std::optional<int> pending_;
  bool pending_done_ = false;
  int next_index_ = 0;
  int model_suggestions_ = 0;
  int consecutive_skips_ = 0;
  int executed_count_ = 0;
  std::optional<EndReason> end_reason_;
};

}  // namespace vidassist
