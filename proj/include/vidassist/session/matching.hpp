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
#include <vector>

#include "vidassist/core/types.hpp"
#include "vidassist/vocab_map/embedding_cache.hpp"

namespace vidassist {

inline constexpr double kMatchThreshold = 0.7;
inline constexpr double kDoneThreshold = 0.8;

struct StepMatch {
  std::optional<std::string> step_id;
  double cosine = 0.0;  // best canonical-phrase cosine, matched or not
};

/// Step whose canonical phrases are closest to `instruction`; none below
/// `threshold`. Ties go to the earlier step in script order.
StepMatch match_to_step(const std::string& instruction, const ActivityScript& script,
                        EmbeddingCache& cache, double threshold = kMatchThreshold);

/// Phrases that mark an activity-complete suggestion.
const std::vector<std::string>& default_done_phrases();

/// True iff `instruction` carries an explicit DONE token or its best cosine
/// to a done phrase reaches `threshold`.
bool detect_done(const std::string& instruction, EmbeddingCache& cache,
                 double threshold = kDoneThreshold,
                 const std::vector<std::string>& phrases = default_done_phrases());

struct StepIou {
  double value = 0.0;
  int intersection = 0;
  int union_size = 0;
  std::vector<std::string> matched_steps;   // distinct, first-seen order
  std::vector<std::string> unmatched_texts;  // distinct normalized texts
};

/// IoU between the suggested-step set and the script's evaluation steps.
/// Suggestions that match no step count once per distinct normalized text
/// on the union side. Online and offline scoring both use this.
StepIou step_set_iou(const std::vector<std::string>& suggestions, const ActivityScript& script,
                     EmbeddingCache& cache, double threshold = kMatchThreshold);

}  // namespace vidassist
