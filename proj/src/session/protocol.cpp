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

#include "vidassist/session/protocol.hpp"

#include "vidassist/core/errors.hpp"

namespace vidassist {

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::partial_progress: return "partial_progress";
    case Phase::assisting: return "assisting";
    case Phase::completed: return "completed";
  }
  return "?";
}

const char* to_string(EndReason reason) noexcept {
  switch (reason) {
    case EndReason::done_step: return "done_step";
    case EndReason::three_skips: return "three_skips";
    case EndReason::step_cap: return "step_cap";
  }
  return "?";
}

Phase phase_from_string(std::string_view text) {
  for (auto p : {Phase::partial_progress, Phase::assisting, Phase::completed})
    if (text == to_string(p)) return p;
  throw_schema("unknown phase '" + std::string(text) + "'");
}

EndReason end_reason_from_string(std::string_view text) {
  for (auto r : {EndReason::done_step, EndReason::three_skips, EndReason::step_cap})
    if (text == to_string(r)) return r;
  throw_schema("unknown end_reason '" + std::string(text) + "'");
}

ProtocolState::ProtocolState(int n_eval) : n_eval_(n_eval) {
  if (n_eval < 1) throw_argument("protocol: n_eval must be >= 1");
}

void ProtocolState::require_open() const {
  if (phase_ == Phase::completed)
    throw Error(ErrorKind::protocol, "session_completed", "the session has already ended");
}

void ProtocolState::begin_assistance() {
  require_open();
  phase_ = Phase::assisting;
}

int ProtocolState::issue(bool done) {
  require_open();
  if (pending_)
    throw Error(ErrorKind::protocol, "pending_suggestion",
                "resolve previous outcome first (suggestion " + std::to_string(*pending_) + ")");
  phase_ = Phase::assisting;
  pending_ = next_index_++;
  pending_done_ = done;
  ++model_suggestions_;
  return *pending_;
}

int ProtocolState::issue_system_error() {
  require_open();
  if (pending_)
    throw Error(ErrorKind::protocol, "pending_suggestion",
                "resolve previous outcome first (suggestion " + std::to_string(*pending_) + ")");
  phase_ = Phase::assisting;
  return next_index_++;
}

void ProtocolState::resolve(int index, Outcome outcome) {
  if (outcome == Outcome::pending || outcome == Outcome::system_error)
    throw_argument(std::string("outcome must be executed or a skip, got ") + to_string(outcome));
  if (!pending_ || *pending_ != index)
    throw Error(ErrorKind::protocol, "no_pending_suggestion",
                "no pending suggestion with index " + std::to_string(index));
  pending_.reset();
  if (outcome == Outcome::executed) {
    ++executed_count_;
    consecutive_skips_ = 0;
  } else {
    ++consecutive_skips_;
  }
  if (pending_done_) {
    end_reason_ = EndReason::done_step;
  } else if (consecutive_skips_ >= kSkipLimit) {
    end_reason_ = EndReason::three_skips;
  } else if (executed_count_ >= step_cap()) {
    end_reason_ = EndReason::step_cap;
  }
  if (end_reason_) phase_ = Phase::completed;
}

std::string ProtocolState::check_invariants() const {
  if (consecutive_skips_ > kSkipLimit) return "consecutive_skips above the skip limit";
  if (executed_count_ > step_cap()) return "executed_count above n_eval+2";
  if (pending_ && phase_ == Phase::completed) return "pending suggestion in a completed session";
  if ((phase_ == Phase::completed) != end_reason_.has_value())
    return "end_reason set iff completed violated";
  if (model_suggestions_ > suggestion_bound()) return "suggestion bound exceeded";
  return {};
}

}  // namespace vidassist
