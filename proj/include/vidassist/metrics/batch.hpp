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

#include <span>
#include <vector>

#include "vidassist/core/types.hpp"

namespace vidassist::metrics {

/// Every per-pair metric at horizon Z.
struct PairScores {
  double ed_verb = 0.0;
  double ed_noun = 0.0;
  double ed_action = 0.0;
  double macc = 0.0;
  double miou = 0.0;
  int sr = 0;

  friend bool operator==(const PairScores&, const PairScores&) = default;
};

PairScores score_pair(const ActionSequence& pred, const ActionSequence& gt, int z);

/// Reference implementation: one pair after another.
std::vector<PairScores> score_pairs_serial(std::span<const ActionSequence> preds,
                                           std::span<const ActionSequence> gts, int z);

/// OpenMP implementation; `threads` <= 0 uses the runtime default.
/// Results are identical to score_pairs_serial, element for element.
std::vector<PairScores> score_pairs_parallel(std::span<const ActionSequence> preds,
                                             std::span<const ActionSequence> gts, int z,
                                             int threads = 0);

}  // namespace vidassist::metrics
