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

#include "vidassist/providers/stubs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "vidassist/core/errors.hpp"
#include "vidassist/prompting/prompt.hpp"
#include "vidassist/vocab_map/text.hpp"

namespace vidassist::stubs {

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

BagOfWordsEmbedder::BagOfWordsEmbedder(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw_argument("embedding dimension must be positive");
}

ProviderDescriptor BagOfWordsEmbedder::descriptor() const {
  return {ProviderKind::embedder, "stub-bow", std::nullopt, true, std::nullopt};
}

std::size_t BagOfWordsEmbedder::bucket(std::string_view word) const {
  return static_cast<std::size_t>(fnv1a(word) % dim_);
}

std::vector<std::string> BagOfWordsEmbedder::words(const std::string& text) const {
  return content_words(text, default_stopwords());
}

std::vector<EmbeddingVector> BagOfWordsEmbedder::do_embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    EmbeddingVector v;
    v.values.assign(dim_, 0.0f);
    for (const auto& w : words(text)) v.values[bucket(w)] += 1.0f;
    out.push_back(v.normalized());
  }
  return out;
}

SynonymEmbedder::SynonymEmbedder(std::map<std::string, std::string> table, std::size_t dim)
    : BagOfWordsEmbedder(dim) {
  for (auto& [word, canonical] : table) table_[normalize_term(word)] = normalize_term(canonical);
}

ProviderDescriptor SynonymEmbedder::descriptor() const {
  return {ProviderKind::embedder, "stub-synonym", std::nullopt, true, std::nullopt};
}

std::vector<std::string> SynonymEmbedder::words(const std::string& text) const {
  std::vector<std::string> out;
  for (auto& w : BagOfWordsEmbedder::words(text)) {
    auto it = table_.find(w);
    if (it == table_.end()) {
      out.push_back(std::move(w));
    } else if (!it->second.empty()) {
      out.push_back(it->second);
    }
  }
  return out;
}

VectorTableEmbedder::VectorTableEmbedder(std::map<std::string, std::vector<float>> table) {
  for (auto& [word, vec] : table) {
    if (vec.empty()) throw_schema("embedding table: empty vector for '" + word + "'");
    if (dim_ == 0) dim_ = vec.size();
    if (vec.size() != dim_) throw_schema("embedding table: inconsistent dimension at '" + word + "'");
    table_[normalize_term(word)] = std::move(vec);
  }
  if (table_.empty()) throw_schema("embedding table is empty");
}

ProviderDescriptor VectorTableEmbedder::descriptor() const {
  return {ProviderKind::embedder, "stub-vector-table", std::nullopt, true, std::nullopt};
}

std::vector<EmbeddingVector> VectorTableEmbedder::do_embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    EmbeddingVector v;
    v.values.assign(dim_, 0.0f);
    for (const auto& w : split_words(text)) {
      auto it = table_.find(w);
      if (it == table_.end()) continue;
      for (std::size_t i = 0; i < dim_; ++i) v.values[i] += it->second[i];
    }
    out.push_back(v.normalized());
  }
  return out;
}

std::shared_ptr<Embedder> load_table_embedder(const std::filesystem::path& path) {
  const Json j = parse_json_text(read_text_file(path), path.string());
  if (!j.is_object() || j.empty()) throw_schema(path.string() + ": expected a non-empty object");
  if (j.begin()->is_string()) {
    std::map<std::string, std::string> table;
    for (const auto& [k, v] : j.items()) {
      if (!v.is_string()) throw_schema(path.string() + ": '" + k + "' must map to a string");
      table[k] = v.get<std::string>();
    }
    return std::make_shared<SynonymEmbedder>(std::move(table));
  }
  std::map<std::string, std::vector<float>> table;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_array()) throw_schema(path.string() + ": '" + k + "' must map to an array");
    table[k] = v.get<std::vector<float>>();
  }
  return std::make_shared<VectorTableEmbedder>(std::move(table));
}

StubLanguageModel::StubLanguageModel(std::string name, int context_limit,
                                     std::shared_ptr<const Tokenizer> tokenizer)
    : name_(std::move(name)), context_limit_(context_limit), tokenizer_(std::move(tokenizer)) {
  if (context_limit_ <= 0) throw_argument("context_limit must be positive");
  if (!tokenizer_) tokenizer_ = std::make_shared<HeuristicTokenizer>();
}

ProviderDescriptor StubLanguageModel::descriptor() const {
  return {ProviderKind::llm, name_, context_limit_, true, std::nullopt};
}

std::vector<VisionTokenBlock> StubLanguageModel::vision_blocks() const {
  std::lock_guard lock(mutex_);
  return vision_blocks_;
}

std::string StubLanguageModel::do_complete(const CompletionRequest& request) {
  ++calls_;
  if (request.vision_block) {
    std::lock_guard lock(mutex_);
    vision_blocks_.push_back(*request.vision_block);
  }
  return respond(request);
}

FixtureLlm::FixtureLlm(std::vector<FixtureRule> rules, std::string default_completion,
                       int context_limit, std::shared_ptr<const Tokenizer> tokenizer)
    : StubLanguageModel("stub-fixture", context_limit, std::move(tokenizer)),
      rules_(std::move(rules)),
      default_completion_(std::move(default_completion)) {}

std::shared_ptr<FixtureLlm> FixtureLlm::from_json(const Json& j) {
  if (!j.is_object()) throw_schema("llm fixture: expected an object");
  std::vector<FixtureRule> rules;
  if (j.contains("rules")) {
    const Json& arr = j.at("rules");
    if (!arr.is_array()) throw_schema("llm fixture: 'rules' must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "llm fixture rules[" + std::to_string(i) + "]";
      rules.push_back({json_field::string(arr[i], "contains", where),
                       json_field::string(arr[i], "completion", where)});
    }
  }
  std::string fallback = j.contains("default") ? json_field::string(j, "default", "llm fixture") : "";
  int limit = j.contains("context_limit") ? json_field::integer(j, "context_limit", "llm fixture")
                                          : kDefaultContextLimit;
  return std::make_shared<FixtureLlm>(std::move(rules), std::move(fallback), limit);
}

std::shared_ptr<FixtureLlm> FixtureLlm::load(const std::filesystem::path& path) {
  return from_json(parse_json_text(read_text_file(path), path.string()));
}

std::string FixtureLlm::respond(const CompletionRequest& request) const {
  std::string section = query_section(request.prompt);
  const std::string& haystack = section.empty() ? request.prompt : section;
  for (const auto& rule : rules_) {
    if (haystack.find(rule.contains) != std::string::npos) return rule.completion;
  }
  return default_completion_;
}

RandomActionLlm::RandomActionLlm(Vocabulary vocab, std::uint64_t seed, int context_limit)
    : StubLanguageModel("stub-random", context_limit, std::make_shared<HeuristicTokenizer>()),
      vocab_(std::move(vocab)),
      seed_(seed) {
  if (vocab_.actions().empty()) throw_argument("random planner needs feasible actions");
}

std::string RandomActionLlm::respond(const CompletionRequest& request) const {
  const int z = std::max(1, requested_horizon(request.prompt).value_or(1));
  std::mt19937_64 rng(seed_ ^ fnv1a(request.prompt));
  const auto& actions = vocab_.actions();
  const int cue = trailing_cue(request.prompt).value_or(0);
  std::ostringstream out;
  for (int i = 0; i < z; ++i) {
    const auto& [v, n] = actions[rng() % actions.size()];
    const std::string text = vocab_.verbs()[v] + " " + vocab_.nouns()[n];
    if (cue > 0 && i == 0) {
      out << " " << text;
    } else {
      if (i > 0) out << "\n";
      out << (cue > 0 ? cue + i : i + 1) << ". " << text;
    }
  }
  return out.str();
}

GroundTruthNarrator::GroundTruthNarrator(std::vector<Narration> annotations,
                                         double min_clip_seconds, std::string idle_text)
    : annotations_(std::move(annotations)),
      min_clip_seconds_(min_clip_seconds),
      idle_text_(std::move(idle_text)) {
  for (const auto& a : annotations_) a.validate();
}

ProviderDescriptor GroundTruthNarrator::descriptor() const {
  return {ProviderKind::narrator, "stub-ground-truth", std::nullopt, true, std::nullopt};
}

std::vector<Narration> GroundTruthNarrator::do_narrate(const VideoSegment& clip, int k) {
  std::string text = idle_text_;
  if (clip.gt_action && !clip.gt_action->is_no_action()) {
    text = "A person " + clip.gt_action->verb + " " + clip.gt_action->noun;
  } else {
    double best = 0.0;
    for (const auto& a : annotations_) {
      const double overlap = std::min(a.end_s, clip.end_s) - std::max(a.start_s, clip.start_s);
      if (overlap > best) {
        best = overlap;
        text = a.text;
      }
    }
  }
  std::vector<Narration> out;
  const double step = (clip.end_s - clip.start_s) / k;
  for (int i = 0; i < k; ++i) {
    Narration n;
    n.text = text;
    n.start_s = clip.start_s + step * i;
    n.end_s = i + 1 == k ? clip.end_s : clip.start_s + step * (i + 1);
    n.source = NarrationSource::narrator;
    out.push_back(std::move(n));
  }
  return out;
}

StubVisionEncoder::StubVisionEncoder(int token_count) : token_count_(token_count) {
  if (token_count <= 0) throw_argument("token_count must be positive");
}

ProviderDescriptor StubVisionEncoder::descriptor() const {
  return {ProviderKind::vision_encoder, "stub-vision", std::nullopt, true, std::nullopt};
}

VisionTokenBlock StubVisionEncoder::do_encode(std::span<const VideoSegment> segments) {
  std::ostringstream key;
  for (const auto& s : segments) {
    key << s.start_s << '-' << s.end_s << ';';
    for (const auto& f : s.frame_refs) key << f << ',';
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(key.str())));
  return {token_count_, std::string("stub-vision:") + buf};
}

}  // namespace vidassist::stubs
