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

#include "vidassist/session/matching.hpp"

#include <algorithm>
#include <set>

#include "vidassist/vocab_map/text.hpp"

namespace vidassist {

StepMatch match_to_step(const std::string& instruction, const ActivityScript& script,
                        EmbeddingCache& cache, double threshold) {
  StepMatch best;
  std::optional<std::string> best_id;
  const EmbeddingVector q = cache.get(instruction);
  bool first = true;
  for (const auto& step : script.steps()) {
    for (const auto& phrase : step.canonical_phrases) {
      const double c = cosine(q, cache.get(phrase));
      if (first || c > best.cosine) {
        best.cosine = c;
        best_id = step.step_id;
        first = false;
      }
    }
  }
  if (best_id && best.cosine >= threshold - 1e-9) best.step_id = best_id;
  return best;
}

const std::vector<std::string>& default_done_phrases() {
  static const std::vector<std::string> phrases = {"serve the dish", "the task is complete",
                                                   "enjoy your meal"};
  return phrases;
}

bool detect_done(const std::string& instruction, EmbeddingCache& cache, double threshold,
                 const std::vector<std::string>& phrases) {
  // Explicit marker: the upper-case word DONE.
  for (std::size_t pos = instruction.find("DONE"); pos != std::string::npos;
       pos = instruction.find("DONE", pos + 1)) {
    const bool left = pos == 0 || !std::isalpha(static_cast<unsigned char>(instruction[pos - 1]));
    const std::size_t r = pos + 4;
    const bool right = r >= instruction.size() ||
                       !std::isalpha(static_cast<unsigned char>(instruction[r]));
    if (left && right) return true;
  }
  const EmbeddingVector q = cache.get(instruction);
  for (const auto& p : phrases) {
    if (cosine(q, cache.get(p)) >= threshold - 1e-9) return true;
  }
  return false;
}

StepIou step_set_iou(const std::vector<std::string>& suggestions, const ActivityScript& script,
                     EmbeddingCache& cache, double threshold) {
  StepIou out;
  for (const auto& s : suggestions) {
    const auto m = match_to_step(s, script, cache, threshold);
    if (m.step_id) {
      if (std::find(out.matched_steps.begin(), out.matched_steps.end(), *m.step_id) ==
          out.matched_steps.end())
        out.matched_steps.push_back(*m.step_id);
    } else {
      std::string key;
      for (const auto& w : split_words(s)) key += (key.empty() ? "" : " ") + w;
      if (std::find(out.unmatched_texts.begin(), out.unmatched_texts.end(), key) ==
          out.unmatched_texts.end())
        out.unmatched_texts.push_back(key);
    }
  }
  const auto eval = script.evaluation_step_ids();
  std::set<std::string> g(eval.begin(), eval.end());
  std::set<std::string> s(out.matched_steps.begin(), out.matched_steps.end());
  for (const auto& id : s) out.intersection += g.count(id) ? 1 : 0;
  out.union_size = static_cast<int>(g.size() + s.size()) - out.intersection +
                   static_cast<int>(out.unmatched_texts.size());
  out.value = out.union_size == 0 ? 0.0 : static_cast<double>(out.intersection) / out.union_size;
  return out;
}

}  // namespace vidassist
