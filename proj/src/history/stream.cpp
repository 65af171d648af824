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

#include "vidassist/history/stream.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "vidassist/core/errors.hpp"
#include "vidassist/kernels/cosine.hpp"
#include "vidassist/prompting/prompt.hpp"

namespace vidassist {

namespace {

constexpr double kTimeEps = 1e-6;

// Runs `fn`, prefixing any Error message with the pipeline stage.
template <typename Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ProviderError& e) {
    throw ProviderError(e.code(), std::string(stage) + ": " + e.what(), e.retriable(), e.attempts());
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), std::string(stage) + ": " + e.what());
  }
}

EmbeddingVector renormalized_mean(const std::vector<EmbeddingVector>& vs) {
  EmbeddingVector m;
  m.values.assign(vs.front().dim(), 0.0f);
  for (const auto& v : vs) {
    for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] += v.values[i];
  }
  return m.normalized();
}

std::string with_person_prefix(std::string s) {
  static const std::string prefix = "A person ";
  if (s.size() >= prefix.size()) {
    bool same = true;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(s[i])) !=
          std::tolower(static_cast<unsigned char>(prefix[i]))) {
        same = false;
        break;
      }
    }
    if (same) return prefix + s.substr(prefix.size());
  }
  return prefix + s;
}

}  // namespace

int StreamConfig::frames_per_clip() const {
  return static_cast<int>(std::lround(fps * clip_seconds));
}

void StreamConfig::validate() const {
  if (fps <= 0) throw_argument("stream: fps must be positive");
  if (!(clip_seconds > 0)) throw_argument("stream: clip_seconds must be positive");
  if (narrations_per_clip < 1) throw_argument("stream: narrations_per_clip must be >= 1");
  if (!(cluster_threshold >= 0.0 && cluster_threshold <= 1.0))
    throw_argument("stream: cluster_threshold must be in [0, 1]");
}

StreamConfig stream_config_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw_schema(where + ": expected an object");
  StreamConfig c;
  if (j.contains("fps")) c.fps = json_field::integer(j, "fps", where);
  if (j.contains("clip_seconds")) c.clip_seconds = json_field::number(j, "clip_seconds", where);
  if (j.contains("narrations_per_clip"))
    c.narrations_per_clip = json_field::integer(j, "narrations_per_clip", where);
  if (j.contains("cluster_threshold"))
    c.cluster_threshold = json_field::number(j, "cluster_threshold", where);
  if (j.contains("crop")) {
    const Json& crop = j.at("crop");
    const std::string w = where + ".crop";
    c.crop_from_w = json_field::integer(crop, "from_w", w);
    c.crop_from_h = json_field::integer(crop, "from_h", w);
    c.crop_to_w = json_field::integer(crop, "to_w", w);
    c.crop_to_h = json_field::integer(crop, "to_h", w);
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, "invalid_config", e.what());
  }
  return c;
}

Json stream_config_to_json(const StreamConfig& c) {
  return {{"fps", c.fps},
          {"clip_seconds", c.clip_seconds},
          {"narrations_per_clip", c.narrations_per_clip},
          {"crop",
           {{"from_w", c.crop_from_w},
            {"from_h", c.crop_from_h},
            {"to_w", c.crop_to_w},
            {"to_h", c.crop_to_h}}},
          {"cluster_threshold", c.cluster_threshold}};
}

std::vector<VideoSegment> segment_stream(const std::vector<FrameRef>& frames,
                                         const StreamConfig& cfg) {
  cfg.validate();
  if (frames.empty()) return {};
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].t < frames[i - 1].t)
      throw Error(ErrorKind::data, "out_of_order",
                  "frame " + frames[i].ref + " at t=" + std::to_string(frames[i].t) +
                      " precedes the previous frame");
  }
  const double t0 = frames.front().t;
  const double end = frames.back().t + 1.0 / cfg.fps;
  const double len = cfg.clip_seconds;
  int n_full = static_cast<int>(std::floor((end - t0) / len + kTimeEps));
  const double remainder = (end - t0) - n_full * len;

  std::vector<double> bounds;  // clip start times plus the final end
  for (int k = 0; k < n_full; ++k) bounds.push_back(t0 + k * len);
  if (n_full == 0 || remainder > len / 2 + kTimeEps) bounds.push_back(t0 + n_full * len);
  bounds.push_back(end);

  std::vector<VideoSegment> clips(bounds.size() - 1);
  for (std::size_t c = 0; c < clips.size(); ++c) {
    clips[c].start_s = bounds[c];
    clips[c].end_s = bounds[c + 1];
  }
  std::size_t c = 0;
  for (const auto& f : frames) {
    while (c + 1 < clips.size() && f.t >= clips[c].end_s - kTimeEps) ++c;
    clips[c].frame_refs.push_back(f.ref);
  }
  return clips;
}

std::vector<NarrationCluster> cluster_narrations(const std::vector<Narration>& narrations,
                                                 EmbeddingCache& cache, double tau) {
  if (narrations.empty()) return {};
  std::vector<std::string> texts;
  texts.reserve(narrations.size());
  for (const auto& n : narrations) texts.push_back(n.text);
  const auto vecs = cache.get_many(texts);

  std::vector<NarrationCluster> clusters;
  std::vector<std::vector<EmbeddingVector>> member_vecs;
  for (std::size_t i = 0; i < narrations.size(); ++i) {
    std::size_t target = clusters.size();
    for (std::size_t c = clusters.size(); c-- > 0;) {
      if (cosine(vecs[i], clusters[c].centroid) >= tau - 1e-9) {
        target = c;
        break;
      }
    }
    if (target == clusters.size()) {
      clusters.push_back({{}, narrations[i], vecs[i]});
      member_vecs.emplace_back();
    }
    clusters[target].members.push_back(narrations[i]);
    member_vecs[target].push_back(vecs[i]);
    clusters[target].centroid = renormalized_mean(member_vecs[target]);
  }
  return clusters;
}

SummaryResult summarize_history(const std::string& goal, const std::vector<Narration>& narrations,
                                LanguageModel& llm, int attempts) {
  if (goal.empty()) throw_argument("summarize_history: goal is empty");
  if (narrations.empty()) throw_argument("summarize_history: no narrations");
  std::vector<std::string> texts;
  for (const auto& n : narrations) texts.push_back(n.text);

  SummaryResult out;
  out.prompt = summarization_prompt(goal, texts);
  const auto cue = out.prompt.substr(out.prompt.find_last_of('\n') + 1);
  std::vector<std::string> items;
  for (int a = 0; a < attempts && items.empty(); ++a) {
    out.completions.push_back(llm.complete({out.prompt, 512, std::nullopt}));
    items = parse_continuation(cue, out.completions.back());
  }
  if (items.empty()) {
    out.narrations = narrations;
    out.fallback = true;
    return out;
  }

  double start = narrations.front().start_s, end = narrations.front().end_s;
  for (const auto& n : narrations) {
    start = std::min(start, n.start_s);
    end = std::max(end, n.end_s);
  }
  const double step = (end - start) / static_cast<double>(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    Narration n;
    n.text = with_person_prefix(items[i]);
    n.start_s = start + step * static_cast<double>(i);
    n.end_s = i + 1 == items.size() ? end : start + step * static_cast<double>(i + 1);
    n.source = NarrationSource::summarizer;
    out.narrations.push_back(std::move(n));
  }
  return out;
}

std::optional<std::vector<GoalCandidate>> parse_goal_response(const std::string& completion) {
  const auto b = completion.find('[');
  const auto e = completion.rfind(']');
  if (b == std::string::npos || e == std::string::npos || e < b) return std::nullopt;
  Json arr;
  try {
    arr = Json::parse(completion.substr(b, e - b + 1));
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
  if (!arr.is_array()) return std::nullopt;
  std::vector<GoalCandidate> out;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("user_goal") || !item.contains("confidence")) continue;
    if (!item["user_goal"].is_string() || !item["confidence"].is_number()) continue;
    GoalCandidate c;
    c.user_goal = item["user_goal"].get<std::string>();
    c.confidence = item["confidence"].get<double>();
    if (item.contains("explanation") && item["explanation"].is_string())
      c.explanation = item["explanation"].get<std::string>();
    if (c.user_goal.empty() || !(c.confidence >= 0.0 && c.confidence <= 1.0)) continue;
    out.push_back(std::move(c));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

GoalResult generate_goal(const std::vector<Narration>& narrations, LanguageModel& llm,
                         int attempts) {
  if (narrations.empty()) throw_argument("generate_goal: no narrations");
  std::vector<std::string> texts;
  for (const auto& n : narrations) texts.push_back(n.text);
  GoalResult out;
  out.prompt = goal_generation_prompt(texts);
  for (int a = 0; a < attempts; ++a) {
    auto parsed = parse_goal_response(llm.complete({out.prompt, 512, std::nullopt}));
    if (!parsed) continue;
    out.candidates = std::move(*parsed);
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.candidates.size(); ++i) {
      if (out.candidates[i].confidence > out.candidates[best].confidence) best = i;
    }
    static const std::string lead = "They wanted to ";
    const std::string& g = out.candidates[best].user_goal;
    out.goal = g.rfind(lead, 0) == 0 ? g : lead + g;
    return out;
  }
  throw Error(ErrorKind::prediction, "invalid_goal_json",
              "no valid goal list after " + std::to_string(attempts) + " attempts");
}

namespace {

EncodedHistory finish(std::vector<Narration> raw, std::vector<VideoSegment> segments,
                      const std::string& goal, const StreamConfig& cfg,
                      const Providers& providers, EmbeddingCache& cache, bool with_vision) {
  EncodedHistory out;
  out.raw_narrations = raw.size();
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Narration& a, const Narration& b) { return a.start_s < b.start_s; });
  auto clusters = staged("cluster", [&] { return cluster_narrations(raw, cache, cfg.cluster_threshold); });
  out.clusters = clusters.size();
  std::vector<Narration> reps;
  for (const auto& c : clusters) reps.push_back(c.representative);
  auto summary = staged("summarize", [&] {
    return summarize_history(goal, reps, providers.summarizer());
  });
  out.summary_fallback = summary.fallback;
  out.summary_prompt = std::move(summary.prompt);
  out.history.narrations = std::move(summary.narrations);
  out.history.goal = goal;
  if (with_vision) {
    if (!providers.vision) throw_argument("encode: vision requested without an encoder");
    if (segments.empty()) {
      VideoSegment span;
      span.start_s = raw.front().start_s;
      for (const auto& n : raw) span.end_s = std::max(span.end_s, n.end_s);
      segments.push_back(span);
    }
    out.history.vision_block = staged("encode", [&] { return providers.vision->encode(segments); });
  }
  out.history.segments = std::move(segments);
  return out;
}

}  // namespace

EncodedHistory encode_online_history(const std::vector<FrameRef>& frames, const std::string& goal,
                                     const StreamConfig& cfg, const Providers& providers,
                                     EmbeddingCache& cache, bool with_vision) {
  if (frames.empty()) throw Error(ErrorKind::data, "empty_history", "empty history: no frames");
  if (!providers.narrator) throw_argument("encode: no narrator");
  auto clips = staged("segment", [&] { return segment_stream(frames, cfg); });

  // Clips are narrated independently; results are gathered in clip order.
  std::vector<std::vector<Narration>> per_clip(clips.size());
  std::vector<std::exception_ptr> errors(clips.size());
  const long n = static_cast<long>(clips.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      per_clip[i] = providers.narrator->narrate(clips[i], cfg.narrations_per_clip);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) staged("narrate", [&]() -> int { std::rethrow_exception(e); });
  }
  std::vector<Narration> raw;
  for (auto& v : per_clip) raw.insert(raw.end(), v.begin(), v.end());
  return finish(std::move(raw), std::move(clips), goal, cfg, providers, cache, with_vision);
}

EncodedHistory encode_online_history(const std::vector<Narration>& narrations,
                                     const std::string& goal, const StreamConfig& cfg,
                                     const Providers& providers, EmbeddingCache& cache,
                                     bool with_vision) {
  if (narrations.empty())
    throw Error(ErrorKind::data, "empty_history", "empty history: no narrations");
  for (const auto& n : narrations) n.validate();
  return finish(narrations, {}, goal, cfg, providers, cache, with_vision);
}

}  // namespace vidassist
