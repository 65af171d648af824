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

#include "vidassist/core/io.hpp"
#include "vidassist/providers/interfaces.hpp"
#include "vidassist/vocab_map/embedding_cache.hpp"

namespace vidassist {

struct FrameRef {
  std::string ref;
  double t = 0.0;  // seconds
};

struct StreamConfig {
  int fps = 10;
  double clip_seconds = 2.0;
  int narrations_per_clip = 10;
  // Capture crop, recorded for provenance only; pixels never reach this code.
  int crop_from_w = 1400, crop_from_h = 1400;
  int crop_to_w = 288, crop_to_h = 384;
  double cluster_threshold = 0.9;

  int frames_per_clip() const;
  void validate() const;
};

StreamConfig stream_config_from_json(const Json& j, const std::string& where = "stream");
Json stream_config_to_json(const StreamConfig& cfg);

/// Uniform clips of cfg.clip_seconds starting at the first frame. A final
/// partial clip stands alone only when strictly longer than half a clip;
/// otherwise it is merged into the previous clip. Spans partition
/// [first frame, last frame + 1/fps).
std::vector<VideoSegment> segment_stream(const std::vector<FrameRef>& frames,
                                         const StreamConfig& cfg);

struct NarrationCluster {
  std::vector<Narration> members;
  Narration representative;  // earliest member
  EmbeddingVector centroid;  // renormalized mean of member embeddings
};

/// Greedy single pass over time-ordered narrations: each joins the most
/// recent cluster whose centroid has cosine >= tau, or opens a new one.
std::vector<NarrationCluster> cluster_narrations(const std::vector<Narration>& narrations,
                                                 EmbeddingCache& cache, double tau);

struct SummaryResult {
  std::vector<Narration> narrations;  // source = summarizer unless fallback
  bool fallback = false;              // parse failed; inputs returned unchanged
  std::string prompt;
  std::vector<std::string> completions;
};

/// Goal-conditioned summarization. Every output begins "A person ", and the
/// outputs split the input span evenly in order.
SummaryResult summarize_history(const std::string& goal, const std::vector<Narration>& narrations,
                                LanguageModel& llm, int attempts = 2);

struct GoalCandidate {
  std::string user_goal;
  double confidence = 0.0;
  std::string explanation;
};

struct GoalResult {
  std::string goal;  // "They wanted to ..."
  std::vector<GoalCandidate> candidates;
  std::string prompt;
};

/// Asks for the top goals as JSON and keeps the most confident one (the
/// earliest on ties). Entries with confidence outside [0, 1] are dropped.
/// Throws Error(prediction, "invalid_goal_json") after `attempts` bad replies.
GoalResult generate_goal(const std::vector<Narration>& narrations, LanguageModel& llm,
                         int attempts = 2);

/// Pulls the goal entries out of a completion; nullopt if no JSON array
/// with at least one valid entry is present.
std::optional<std::vector<GoalCandidate>> parse_goal_response(const std::string& completion);

struct EncodedHistory {
  VisualHistory history;
  std::size_t raw_narrations = 0;
  std::size_t clusters = 0;
  bool summary_fallback = false;
  std::string summary_prompt;
};

/// Frames: segment, narrate every clip, cluster, summarize. Throws
/// Error(data, "empty_history") on an empty stream; stage failures are
/// rethrown with the stage name prepended.
EncodedHistory encode_online_history(const std::vector<FrameRef>& frames, const std::string& goal,
                                     const StreamConfig& cfg, const Providers& providers,
                                     EmbeddingCache& cache, bool with_vision = false);

/// Same from already-narrated input (simulation mode skips the narrator).
EncodedHistory encode_online_history(const std::vector<Narration>& narrations,
                                     const std::string& goal, const StreamConfig& cfg,
                                     const Providers& providers, EmbeddingCache& cache,
                                     bool with_vision = false);

}  // namespace vidassist
