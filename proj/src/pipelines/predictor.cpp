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

#include "vidassist/pipelines/predictor.hpp"

#include <algorithm>

#include "vidassist/core/errors.hpp"

namespace vidassist {

const char* to_string(PredictorKind kind) noexcept {
  return kind == PredictorKind::vclm ? "vclm" : "socratic";
}

PredictorKind predictor_kind_from_string(std::string_view text) {
  if (text == "socratic") return PredictorKind::socratic;
  if (text == "vclm") return PredictorKind::vclm;
  throw_argument("unknown predictor kind '" + std::string(text) + "' (socratic|vclm)");
}

void PredictorConfig::validate() const {
  if (z <= 0) throw_argument("predictor: Z must be positive");
  if (context_limit <= 0) throw_argument("predictor: context_limit must be positive");
  if (vision_tokens < 0 || vision_tokens >= context_limit)
    throw_argument("predictor: vision_tokens must be in [0, context_limit)");
  if (examples < 0) throw_argument("predictor: examples must be >= 0");
  if (attempts < 1) throw_argument("predictor: attempts must be >= 1");
  if (max_new_tokens < 0) throw_argument("predictor: max_new_tokens must be >= 0");
  if (kind == PredictorKind::socratic && (vision_tokens != 0 || !use_text_history))
    throw_argument("predictor: socratic needs vision_tokens=0 and use_text_history=true");
}

PredictorConfig PredictorConfig::socratic(Task task, int z) {
  PredictorConfig c;
  c.task = task;
  c.z = z;
  return c;
}

PredictorConfig PredictorConfig::vclm(Task task, int z) {
  PredictorConfig c = socratic(task, z);
  c.kind = PredictorKind::vclm;
  c.vision_tokens = kVisionTokens;
  return c;
}

PredictorConfig predictor_config_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw_schema(where + ": expected an object");
  PredictorConfig c;
  if (j.contains("kind")) c.kind = predictor_kind_from_string(json_field::string(j, "kind", where));
  if (c.kind == PredictorKind::vclm) c.vision_tokens = kVisionTokens;
  if (j.contains("task")) c.task = task_from_string(json_field::string(j, "task", where));
  if (j.contains("z")) c.z = json_field::integer(j, "z", where);
  if (j.contains("goal_conditioning"))
    c.goal_conditioning = json_field::boolean(j, "goal_conditioning", where);
  if (j.contains("use_text_history"))
    c.use_text_history = json_field::boolean(j, "use_text_history", where);
  if (j.contains("context_limit")) c.context_limit = json_field::integer(j, "context_limit", where);
  if (j.contains("vision_tokens")) c.vision_tokens = json_field::integer(j, "vision_tokens", where);
  if (j.contains("open_set_output"))
    c.open_set_output = json_field::boolean(j, "open_set_output", where);
  if (j.contains("examples")) c.examples = json_field::integer(j, "examples", where);
  if (j.contains("max_new_tokens")) c.max_new_tokens = json_field::integer(j, "max_new_tokens", where);
  if (j.contains("attempts")) c.attempts = json_field::integer(j, "attempts", where);
  try {
    c.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, "invalid_config", where + ": " + e.what());
  }
  return c;
}

Json predictor_config_to_json(const PredictorConfig& c) {
  return {{"kind", to_string(c.kind)},
          {"task", to_string(c.task)},
          {"z", c.z},
          {"goal_conditioning", c.goal_conditioning},
          {"use_text_history", c.use_text_history},
          {"context_limit", c.context_limit},
          {"vision_tokens", c.vision_tokens},
          {"open_set_output", c.open_set_output},
          {"examples", c.examples},
          {"max_new_tokens", c.max_new_tokens},
          {"attempts", c.attempts}};
}

Predictor::Predictor(PredictorConfig cfg, Providers providers,
                     std::shared_ptr<const ExamplePool> pool, std::shared_ptr<EmbeddingCache> cache,
                     std::optional<Vocabulary> vocab)
    : cfg_(cfg), providers_(std::move(providers)), pool_(std::move(pool)), cache_(std::move(cache)) {
  cfg_.validate();
  if (!providers_.llm) throw_argument("predictor: no language model");
  if (!cache_) {
    if (!providers_.embedder) throw_argument("predictor: no embedder");
    cache_ = std::make_shared<EmbeddingCache>(providers_.embedder);
  }
  if (cfg_.kind == PredictorKind::vclm && !providers_.vision)
    throw_argument("predictor: vclm needs a vision encoder");
  if (!cfg_.open_set_output) {
    if (!vocab) throw_argument("predictor: closed-set output needs a vocabulary");
    mapper_.emplace(std::move(*vocab), cache_);
  }
}

Prediction Predictor::predict(const VisualHistory& history) const {
  return predict(history, cfg_.z);
}

namespace {

// Clips handed to the vision encoder: the recorded segments, or one span
// covering the narrations when the history came in as text only.
std::vector<VideoSegment> vision_input(const VisualHistory& history) {
  if (!history.segments.empty()) return history.segments;
  VideoSegment s;
  for (std::size_t i = 0; i < history.narrations.size(); ++i) {
    const auto& n = history.narrations[i];
    s.start_s = i == 0 ? n.start_s : std::min(s.start_s, n.start_s);
    s.end_s = std::max(s.end_s, n.end_s);
  }
  return {s};
}

}  // namespace

Prediction Predictor::predict(const VisualHistory& history, int z) const {
  if (z <= 0) throw_argument("predictor: Z must be positive");
  const bool text = cfg_.use_text_history;
  if (text && history.narrations.empty())
    throw Error(ErrorKind::data, "empty_history", "history has no narrations to predict from");
  const bool vpa = cfg_.task == Task::vpa;
  if (text && vpa && cfg_.goal_conditioning && (!history.goal || history.goal->empty()))
    throw_argument("goal conditioning is on but the history carries no goal");

  Prediction out;
  PromptParts parts;
  if (!text) {
    parts = vision_only_prompt_parts(z);
  } else {
    std::vector<RetrievedExample> examples;
    if (pool_ && !pool_->empty() && cfg_.examples > 0) {
      Retrieval r = retrieve_examples(history.narration_texts(), *pool_, cfg_.examples, *cache_);
      examples = std::move(r.examples);
      out.retrieval_fallback = r.fallback;
    }
    parts = vpa ? vpa_prompt_parts(history.goal.value_or(""), examples, history, z,
                                   cfg_.goal_conditioning)
                : lta_prompt_parts(examples, history, z);
  }
  const auto& llm = *providers_.llm;
  out.prompt = fit_to_budget(parts, llm.tokenizer(), std::min(cfg_.context_limit,
                             llm.descriptor().context_limit.value_or(cfg_.context_limit)),
                             cfg_.vision_tokens);

  CompletionRequest request;
  request.prompt = out.prompt.text;
  request.max_new_tokens = cfg_.max_new_tokens;
  if (cfg_.kind == PredictorKind::vclm) {
    if (history.vision_block) {
      request.vision_block = history.vision_block;
    } else {
      const auto clips = vision_input(history);
      request.vision_block = providers_.vision->encode(clips);
    }
    request.vision_block->token_count = cfg_.vision_tokens;
  }

  for (int attempt = 0; attempt < cfg_.attempts && out.raw_sentences.empty(); ++attempt) {
    out.completions.push_back(providers_.llm->complete(request));
    out.raw_sentences = parse_continuation(out.prompt.continuation_cue, out.completions.back());
  }
  out.parse_failed = out.raw_sentences.empty();
  if (static_cast<int>(out.raw_sentences.size()) > z) out.raw_sentences.resize(z);
  if (mapper_) {
    ActionSequence seq = mapper_->map_sequence(out.raw_sentences).fitted(z);
    seq.horizon = z;
    out.mapped = std::move(seq);
  }
  return out;
}

std::string Predictor::predict_next(const VisualHistory& history, Prediction* details) const {
  Prediction p = predict(history, 1);
  if (details) *details = p;
  if (p.raw_sentences.empty()) {
    throw Error(ErrorKind::prediction, "empty_prediction",
                "no numbered step in " + std::to_string(p.completions.size()) + " completions");
  }
  return p.raw_sentences.front();
}

}  // namespace vidassist
