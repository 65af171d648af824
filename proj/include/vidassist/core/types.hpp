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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vidassist {

/// Lowercases ASCII letters and trims surrounding whitespace.
std::string normalize_term(std::string_view term);

/// Closed prediction space: verb and noun classes plus the subset of
/// (verb, noun) pairs admitted as feasible actions. Indices are 0-based.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Normalizes terms and validates every invariant; throws Error(schema)
  /// on duplicates, empty lists or out-of-range action pairs.
  static Vocabulary make(std::vector<std::string> verbs, std::vector<std::string> nouns,
                         std::vector<std::pair<int, int>> actions);

  const std::vector<std::string>& verbs() const noexcept { return verbs_; }
  const std::vector<std::string>& nouns() const noexcept { return nouns_; }
  /// Sorted, unique.
  const std::vector<std::pair<int, int>>& actions() const noexcept { return actions_; }

  bool feasible(int verb_index, int noun_index) const;
  std::optional<int> verb_index(std::string_view verb) const;
  std::optional<int> noun_index(std::string_view noun) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> verbs_;
  std::vector<std::string> nouns_;
  std::vector<std::pair<int, int>> actions_;
};

/// A (verb, noun) action. The default-constructed label is NO_ACTION, the
/// padding/failure placeholder that matches nothing, itself included.
struct ActionLabel {
  int verb_index = -1;
  int noun_index = -1;
  std::string verb;
  std::string noun;

  static ActionLabel no_action() { return {}; }
  /// Resolves both terms in `vocab`; throws Error(data) if either is unknown.
  static ActionLabel from_terms(const Vocabulary& vocab, std::string_view verb,
                                std::string_view noun);
  static ActionLabel from_indices(const Vocabulary& vocab, int verb_index, int noun_index);

  bool is_no_action() const noexcept { return verb_index < 0 || noun_index < 0; }
  std::string text() const;

  friend bool operator==(const ActionLabel&, const ActionLabel&) = default;
};

struct ActionSequence {
  std::vector<ActionLabel> labels;
  int horizon = 0;  // Z; 0 when not yet fixed

  std::size_t size() const noexcept { return labels.size(); }
  /// Truncates or pads with NO_ACTION to exactly `z` labels.
  ActionSequence fitted(int z) const;

  friend bool operator==(const ActionSequence&, const ActionSequence&) = default;
};

enum class NarrationSource { ground_truth, narrator, summarizer };

struct Narration {
  std::string text;
  double start_s = 0.0;
  double end_s = 0.0;
  NarrationSource source = NarrationSource::ground_truth;
  std::optional<double> confidence;

  /// Throws Error(data) when the span is inverted or the text is blank.
  void validate() const;

  friend bool operator==(const Narration&, const Narration&) = default;
};

struct VideoSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::string> frame_refs;
  std::optional<ActionLabel> gt_action;

  friend bool operator==(const VideoSegment&, const VideoSegment&) = default;
};

struct VisionTokenBlock {
  int token_count = 256;
  std::string payload;  // provider-defined, never inspected here

  friend bool operator==(const VisionTokenBlock&, const VisionTokenBlock&) = default;
};

struct VisualHistory {
  std::vector<VideoSegment> segments;
  std::vector<Narration> narrations;  // sorted by start time
  std::optional<std::string> goal;
  std::optional<VisionTokenBlock> vision_block;

  void validate() const;
  std::vector<std::string> narration_texts() const;

  friend bool operator==(const VisualHistory&, const VisualHistory&) = default;
};

struct EmbeddingVector {
  std::vector<float> values;

  std::size_t dim() const noexcept { return values.size(); }
  /// Returns a copy scaled to unit L2 norm; the zero vector stays zero.
  EmbeddingVector normalized() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

/// Cosine similarity; 0 if either vector is zero. Throws on dim mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

enum class Task { lta, vpa };

struct BenchmarkSample {
  std::string sample_id;
  VisualHistory history;
  ActionSequence gt_future;
  Task task = Task::lta;

  friend bool operator==(const BenchmarkSample&, const BenchmarkSample&) = default;
};

struct ScriptStep {
  std::string step_id;
  std::string description;
  std::vector<std::string> canonical_phrases;
  bool optional = false;

  friend bool operator==(const ScriptStep&, const ScriptStep&) = default;
};

/// A scripted multi-step activity. Steps before `assist_boundary` (1-based
/// count) are done unassisted in the partial-progress phase.
class ActivityScript {
 public:
  ActivityScript() = default;

  /// Validates the DAG, boundary and n_eval; throws Error(schema).
  static ActivityScript make(std::string script_id, std::string title, std::string goal_text,
                             std::vector<ScriptStep> steps,
                             std::vector<std::pair<std::string, std::string>> precedence,
                             int assist_boundary,
                             std::vector<std::string> infeasible_actions = {});

  const std::string& script_id() const noexcept { return script_id_; }
  const std::string& title() const noexcept { return title_; }
  const std::string& goal_text() const noexcept { return goal_text_; }
  const std::vector<ScriptStep>& steps() const noexcept { return steps_; }
  const std::vector<std::pair<std::string, std::string>>& precedence() const noexcept {
    return precedence_;
  }
  int assist_boundary() const noexcept { return assist_boundary_; }
  /// Non-optional steps after the boundary.
  int n_eval() const noexcept { return n_eval_; }
  /// Executed-action cap for an assisted session.
  int step_cap() const noexcept { return n_eval_ + 2; }
  /// Actions that look plausible but cannot be done in this activity variant.
  const std::vector<std::string>& infeasible_actions() const noexcept {
    return infeasible_actions_;
  }

  std::optional<std::size_t> step_position(std::string_view step_id) const;
  const ScriptStep& step(std::string_view step_id) const;
  std::vector<std::string> partial_progress_step_ids() const;
  std::vector<std::string> evaluation_step_ids() const;  // non-optional, post-boundary
  /// Steps that must precede `step_id`.
  std::vector<std::string> predecessors(std::string_view step_id) const;
  /// Kahn's algorithm, ties broken by listed order.
  std::vector<std::string> topological_order() const;

  friend bool operator==(const ActivityScript&, const ActivityScript&) = default;

 private:
  std::string script_id_;
  std::string title_;
  std::string goal_text_;
  std::vector<ScriptStep> steps_;
  std::vector<std::pair<std::string, std::string>> precedence_;
  int assist_boundary_ = 0;
  int n_eval_ = 0;
  std::vector<std::string> infeasible_actions_;
};

enum class Outcome {
  pending,
  executed,
  skipped_redundant,
  skipped_infeasible,
  skipped_irrelevant,
  system_error,  // provider failure turn; never counted as a skip
};

const char* to_string(Outcome outcome) noexcept;
Outcome outcome_from_string(std::string_view text);
bool is_skip(Outcome outcome) noexcept;

struct SuggestionRecord {
  int index = 0;
  std::string raw_text;
  std::optional<std::string> mapped_step;
  Outcome outcome = Outcome::pending;
  double timestamp = 0.0;  // media time of the newest ingested content
  bool done = false;       // flagged as an activity-complete step at issue time

  friend bool operator==(const SuggestionRecord&, const SuggestionRecord&) = default;
};

const char* to_string(NarrationSource source) noexcept;
NarrationSource narration_source_from_string(std::string_view text);
const char* to_string(Task task) noexcept;
Task task_from_string(std::string_view text);

}  // namespace vidassist
