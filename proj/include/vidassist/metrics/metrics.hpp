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
#include <span>
#include <vector>

#include "vidassist/core/types.hpp"

namespace vidassist::metrics {

/// Which token stream of an action sequence to compare.
enum class Stream { verb, noun, action };

/// Unit-cost Levenshtein distance (insert/delete/substitute). Negative
/// tokens never match anything, including an equal negative token.
std::size_t levenshtein(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Tokens for `seq` fitted to length `z`. NO_ACTION positions become
/// negative tokens unique within `salt` so they match nothing.
std::vector<std::int64_t> tokens(const ActionSequence& seq, int z, Stream stream, int salt);

/// Levenshtein distance between pred and the gt prefix, both fitted to Z,
/// divided by Z. Throws Error(argument) when z <= 0 or gt is empty.
double edit_distance(const ActionSequence& pred, const ActionSequence& gt, int z,
                     Stream stream = Stream::action);

/// Minimum edit distance over K candidate predictions (K >= 1).
double min_edit_distance(std::span<const ActionSequence> candidates, const ActionSequence& gt,
                         int z, Stream stream = Stream::action);

/// Fraction of the Z positions where pred equals gt; padding never matches.
double mean_accuracy(const ActionSequence& pred, const ActionSequence& gt, int z);

struct IouResult {
  double value = 0.0;
  bool both_empty = false;  // flagged; value is 0 by definition
};

/// Set IoU over full (verb, noun) labels. Duplicates collapse and NO_ACTION
/// entries are ignored.
IouResult iou(const ActionSequence& pred, const ActionSequence& gt);
inline double miou(const ActionSequence& pred, const ActionSequence& gt) {
  return iou(pred, gt).value;
}

/// 1 iff pred[t] == gt[t] for every t in [0, Z).
int success_rate(const ActionSequence& pred, const ActionSequence& gt, int z);

}  // namespace vidassist::metrics
