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

#include "vidassist/metrics/metrics.hpp"

#include <algorithm>
#include <set>

#include "vidassist/core/errors.hpp"

namespace vidassist::metrics {

std::size_t levenshtein(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  // Single-row DP over b.
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const bool same = a[i - 1] >= 0 && a[i - 1] == b[j - 1];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (same ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::int64_t> tokens(const ActionSequence& seq, int z, Stream stream, int salt) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(z));
  for (int t = 0; t < z; ++t) {
    const bool present = t < static_cast<int>(seq.labels.size());
    const ActionLabel* label = present ? &seq.labels[t] : nullptr;
    if (!label || label->is_no_action()) {
      out[t] = -1 - (static_cast<std::int64_t>(t) * 2 + salt);
      continue;
    }
    switch (stream) {
      case Stream::verb: out[t] = label->verb_index; break;
      case Stream::noun: out[t] = label->noun_index; break;
      case Stream::action:
        out[t] = (static_cast<std::int64_t>(label->verb_index) << 32) | label->noun_index;
        break;
    }
  }
  return out;
}

namespace {

void check_args(const ActionSequence& gt, int z) {
  if (z <= 0) throw_argument("horizon Z must be positive, got " + std::to_string(z));
  if (gt.labels.empty()) throw_argument("ground-truth sequence is empty");
}

}  // namespace

double edit_distance(const ActionSequence& pred, const ActionSequence& gt, int z, Stream stream) {
  check_args(gt, z);
  const auto a = tokens(pred, z, stream, 0);
  const auto b = tokens(gt, z, stream, 1);
  return static_cast<double>(levenshtein(a, b)) / z;
}

double min_edit_distance(std::span<const ActionSequence> candidates, const ActionSequence& gt,
                         int z, Stream stream) {
  if (candidates.empty()) throw_argument("min_edit_distance needs at least one candidate");
  double best = 1.0;
  for (const auto& c : candidates) best = std::min(best, edit_distance(c, gt, z, stream));
  return best;
}

double mean_accuracy(const ActionSequence& pred, const ActionSequence& gt, int z) {
  check_args(gt, z);
  const auto a = tokens(pred, z, Stream::action, 0);
  const auto b = tokens(gt, z, Stream::action, 1);
  int hits = 0;
  for (int t = 0; t < z; ++t) hits += (a[t] >= 0 && a[t] == b[t]) ? 1 : 0;
  return static_cast<double>(hits) / z;
}

IouResult iou(const ActionSequence& pred, const ActionSequence& gt) {
  std::set<std::pair<int, int>> p, g;
  for (const auto& l : pred.labels) {
    if (!l.is_no_action()) p.emplace(l.verb_index, l.noun_index);
  }
  for (const auto& l : gt.labels) {
    if (!l.is_no_action()) g.emplace(l.verb_index, l.noun_index);
  }
  std::size_t inter = 0;
  for (const auto& x : p) inter += g.count(x);
  const std::size_t uni = p.size() + g.size() - inter;
  if (uni == 0) return {0.0, true};
  return {static_cast<double>(inter) / static_cast<double>(uni), false};
}

int success_rate(const ActionSequence& pred, const ActionSequence& gt, int z) {
  check_args(gt, z);
  return mean_accuracy(pred, gt, z) == 1.0 ? 1 : 0;
}

}  // namespace vidassist::metrics
