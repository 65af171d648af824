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

#include "vidassist/bench/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "vidassist/core/errors.hpp"

namespace vidassist::bench {

namespace {

ActionLabel draw(const Vocabulary& vocab, std::mt19937_64& rng) {
  const auto& actions = vocab.actions();
  const auto& [v, n] = actions[rng() % actions.size()];
  return ActionLabel::from_indices(vocab, v, n);
}

std::string narrate(const ActionLabel& a) { return "A person " + a.verb + " " + a.noun; }

std::string numbered_id(const char* prefix, int i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%03d", prefix, i);
  return buf;
}

void check(const Vocabulary& vocab, int count) {
  if (vocab.actions().empty()) throw_argument("synthetic data needs feasible actions");
  if (count <= 0) throw_argument("sample count must be positive");
}

}  // namespace

std::vector<BenchmarkSample> synth_lta(const Vocabulary& vocab, int count, int z,
                                       std::uint64_t seed, int segments, double clip_seconds) {
  check(vocab, count);
  if (z <= 0 || segments <= 0 || clip_seconds <= 0) throw_argument("invalid synthetic LTA shape");
  std::mt19937_64 rng(seed);
  std::vector<BenchmarkSample> out;
  for (int i = 0; i < count; ++i) {
    BenchmarkSample s;
    s.sample_id = numbered_id("lta", i);
    s.task = Task::lta;
    for (int c = 0; c < segments; ++c) {
      const ActionLabel a = draw(vocab, rng);
      const double t0 = c * clip_seconds;
      const double t1 = t0 + clip_seconds;
      s.history.segments.push_back({t0, t1, {}, a});
      s.history.narrations.push_back(
          {narrate(a), t0, t1, NarrationSource::ground_truth, std::nullopt});
    }
    for (int k = 0; k < z; ++k) s.gt_future.labels.push_back(draw(vocab, rng));
    s.gt_future.horizon = z;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<VpaVideo> synth_vpa_videos(const Vocabulary& vocab, int count, int steps,
                                       std::uint64_t seed) {
  check(vocab, count);
  if (steps <= 0) throw_argument("step count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<VpaVideo> out;
  for (int i = 0; i < count; ++i) {
    VpaVideo v;
    v.video_id = numbered_id("vpa", i);
    v.goal = "Complete procedure " + std::to_string(i + 1);
    double t = 0.0;
    for (int k = 0; k < steps; ++k) {
      const double len = 4.0 + static_cast<double>(rng() % 8);
      v.steps.push_back({draw(vocab, rng), t, t + len, std::nullopt});
      t += len + 1.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<PromptExample> synth_example_pool(const Vocabulary& vocab, int count, int length,
                                              std::uint64_t seed, bool with_goals) {
  check(vocab, count);
  if (length <= 0) throw_argument("example length must be positive");
  std::mt19937_64 rng(seed);
  std::vector<PromptExample> out;
  for (int i = 0; i < count; ++i) {
    PromptExample e;
    e.example_id = numbered_id("ex", i);
    for (int k = 0; k < length; ++k) e.narrations.push_back(narrate(draw(vocab, rng)));
    if (with_goals) e.goal = "Complete training procedure " + std::to_string(i + 1);
    out.push_back(std::move(e));
  }
  return out;
}

Json cheating_fixture(const std::vector<BenchmarkSample>& samples, const PredictorConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> rules;
  for (const auto& s : samples) {
    const PromptParts parts =
        cfg.task == Task::vpa
            ? vpa_prompt_parts(s.history.goal.value_or(""), {}, s.history, cfg.z,
                               cfg.goal_conditioning)
            : lta_prompt_parts({}, s.history, cfg.z);
    std::vector<std::string> items;
    for (const auto& a : s.gt_future.labels) items.push_back(a.verb + " " + a.noun);
    rules.emplace_back(parts.history_block, numbered_list(items));
  }
  std::stable_sort(rules.begin(), rules.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  Json arr = Json::array();
  for (const auto& [key, completion] : rules) arr.push_back({{"contains", key}, {"completion", completion}});
  return {{"rules", arr}, {"default", ""}};
}

}  // namespace vidassist::bench
