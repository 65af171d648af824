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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "vidassist/core/io.hpp"
#include "vidassist/providers/interfaces.hpp"

// Deterministic stand-ins for every model service. All of them are pure:
// the same inputs give the same outputs on every run and platform.
namespace vidassist::stubs {

/// 64-bit FNV-1a; the stubs' only hash, fixed for cross-platform stability.
std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Bag-of-words hashing embedder over lowercase content words. Texts with
/// disjoint content words have cosine 0 unless two words share a bucket.
class BagOfWordsEmbedder : public Embedder {
 public:
  explicit BagOfWordsEmbedder(std::size_t dim = 4096);
  ProviderDescriptor descriptor() const override;
  std::size_t dim() const noexcept { return dim_; }
  std::size_t bucket(std::string_view word) const;

 protected:
  std::vector<EmbeddingVector> do_embed(std::span<const std::string> texts) override;
  /// Words that make up `text`'s bag; subclasses rewrite them.
  virtual std::vector<std::string> words(const std::string& text) const;

 private:
  std::size_t dim_;
};

/// Bag-of-words after rewriting each word through a synonym table
/// (word -> canonical word). A canonical "" drops the word.
class SynonymEmbedder final : public BagOfWordsEmbedder {
 public:
  explicit SynonymEmbedder(std::map<std::string, std::string> table, std::size_t dim = 4096);
  ProviderDescriptor descriptor() const override;

 protected:
  std::vector<std::string> words(const std::string& text) const override;

 private:
  std::map<std::string, std::string> table_;
};

/// Sums per-word vectors from a table; unknown words contribute nothing.
class VectorTableEmbedder final : public Embedder {
 public:
  explicit VectorTableEmbedder(std::map<std::string, std::vector<float>> table);
  ProviderDescriptor descriptor() const override;

 protected:
  std::vector<EmbeddingVector> do_embed(std::span<const std::string> texts) override;

 private:
  std::map<std::string, std::vector<float>> table_;
  std::size_t dim_ = 0;
};

/// Loads a JSON object mapping word -> canonical word (SynonymEmbedder) or
/// word -> vector (VectorTableEmbedder).
std::shared_ptr<Embedder> load_table_embedder(const std::filesystem::path& path);

/// Shared plumbing for stub language models.
class StubLanguageModel : public LanguageModel {
 public:
  StubLanguageModel(std::string name, int context_limit,
                    std::shared_ptr<const Tokenizer> tokenizer);
  ProviderDescriptor descriptor() const override;
  const Tokenizer& tokenizer() const override { return *tokenizer_; }

  /// Number of completions served (budget-rejected prompts are not counted).
  int calls() const noexcept { return calls_.load(); }
  /// Vision blocks received, in call order.
  std::vector<VisionTokenBlock> vision_blocks() const;

 protected:
  std::string do_complete(const CompletionRequest& request) final;
  virtual std::string respond(const CompletionRequest& request) const = 0;

 private:
  std::string name_;
  int context_limit_;
  std::shared_ptr<const Tokenizer> tokenizer_;
  std::atomic<int> calls_{0};
  mutable std::mutex mutex_;
  std::vector<VisionTokenBlock> vision_blocks_;
};

struct FixtureRule {
  std::string contains;    // substring looked up in the prompt's query section
  std::string completion;  // returned verbatim
};

/// Fixture-table planner: the first rule whose key occurs in the query
/// section (or the whole prompt when there is none) wins; otherwise the
/// default completion.
class FixtureLlm final : public StubLanguageModel {
 public:
  FixtureLlm(std::vector<FixtureRule> rules, std::string default_completion = {},
             int context_limit = 2048,
             std::shared_ptr<const Tokenizer> tokenizer = std::make_shared<HeuristicTokenizer>());

  /// {"rules":[{"contains":..., "completion":...}], "default": "..."}
  static std::shared_ptr<FixtureLlm> from_json(const Json& j);
  static std::shared_ptr<FixtureLlm> load(const std::filesystem::path& path);

 protected:
  std::string respond(const CompletionRequest& request) const override;

 private:
  std::vector<FixtureRule> rules_;
  std::string default_completion_;
};

/// Emits Z uniformly random feasible actions as "<verb> <noun>" lines,
/// seeded by the prompt text, so repeated prompts repeat their answer.
class RandomActionLlm final : public StubLanguageModel {
 public:
  RandomActionLlm(Vocabulary vocab, std::uint64_t seed, int context_limit = 2048);

 protected:
  std::string respond(const CompletionRequest& request) const override;

 private:
  Vocabulary vocab_;
  std::uint64_t seed_;
};

/// Reads narrations from annotations instead of pixels. A clip carrying a
/// gt_action is narrated from it; otherwise the annotation overlapping it
/// most wins, and the idle text covers clips nothing overlaps. Each
/// narration is repeated k times across the clip.
class GroundTruthNarrator final : public Narrator {
 public:
  explicit GroundTruthNarrator(std::vector<Narration> annotations = {},
                               double min_clip_seconds = 0.0,
                               std::string idle_text = "A person looks around the kitchen");
  ProviderDescriptor descriptor() const override;
  double min_clip_seconds() const override { return min_clip_seconds_; }

 protected:
  std::vector<Narration> do_narrate(const VideoSegment& clip, int k) override;

 private:
  std::vector<Narration> annotations_;
  double min_clip_seconds_;
  std::string idle_text_;
};

/// Returns a tagged placeholder block whose payload hashes the input.
class StubVisionEncoder final : public VisionEncoder {
 public:
  explicit StubVisionEncoder(int token_count = 256);
  ProviderDescriptor descriptor() const override;

 protected:
  VisionTokenBlock do_encode(std::span<const VideoSegment> segments) override;

 private:
  int token_count_;
};

/// Free-form answer with no numbered lines, as a model that ignores the
/// requested list format would give.
inline constexpr const char* kProseCompletion =
    "The person is in a kitchen and seems busy with some food on the counter, "
    "probably getting a meal ready over the next few minutes.";

}  // namespace vidassist::stubs
