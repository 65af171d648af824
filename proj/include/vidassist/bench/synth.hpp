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

#include <cstdint>
#include <vector>

#include "vidassist/bench/offline.hpp"

// Schema-identical synthetic data for the tested benchmark path. All
// generators are seeded and use only mt19937_64 draws reduced modulo the
// range, so outputs are the same on every platform.
namespace vidassist::bench {

/// `count` LTA samples: `segments` clips of `clip_seconds` with one
/// ground-truth narration each, and Z future actions.
std::vector<BenchmarkSample> synth_lta(const Vocabulary& vocab, int count, int z,
                                       std::uint64_t seed, int segments = 8,
                                       double clip_seconds = 2.0);

/// `count` procedural videos of `steps` annotated steps, each with its own
/// goal text so expanded histories never collide across videos.
std::vector<VpaVideo> synth_vpa_videos(const Vocabulary& vocab, int count, int steps,
                                       std::uint64_t seed);

/// In-context examples of `length` narrations; goals attached when asked.
std::vector<PromptExample> synth_example_pool(const Vocabulary& vocab, int count, int length,
                                              std::uint64_t seed, bool with_goals);

/// Fixture-planner table that answers every sample with its ground truth.
/// Rules key on the rendered query section, longest first, so a history
/// that prefixes another cannot shadow it.
Json cheating_fixture(const std::vector<BenchmarkSample>& samples, const PredictorConfig& cfg);

}  // namespace vidassist::bench
