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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vidassist/core/types.hpp"

namespace vidassist {

enum class ProviderKind { llm, embedder, narrator, vision_encoder };

const char* to_string(ProviderKind kind) noexcept;

struct ProviderDescriptor {
  ProviderKind kind = ProviderKind::llm;
  std::string name;
  std::optional<int> context_limit;  // required for llm descriptors
  bool deterministic = false;
  std::optional<std::string> endpoint;
};

/// Counts prompt tokens the way a model's tokenizer would.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual int count(std::string_view text) const = 0;
  /// False for heuristic counters; reports flag results produced with them.
  virtual bool exact() const { return true; }
};

/// ceil(chars / 4); the fallback when a provider exposes no tokenizer.
class HeuristicTokenizer final : public Tokenizer {
 public:
  int count(std::string_view text) const override;
  bool exact() const override { return false; }
};

/// One token per whitespace-separated word.
class WordTokenizer final : public Tokenizer {
 public:
  int count(std::string_view text) const override;
};

struct CompletionRequest {
  std::string prompt;
  int max_new_tokens = 512;
  std::optional<VisionTokenBlock> vision_block;
};

class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual ProviderDescriptor descriptor() const = 0;
  virtual const Tokenizer& tokenizer() const = 0;

  /// Checks the context budget (prompt tokens + vision tokens) before any
  /// call is made; max_new_tokens == 0 returns "" without a call.
  std::string complete(const CompletionRequest& request);

 protected:
  virtual std::string do_complete(const CompletionRequest& request) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;

  virtual ProviderDescriptor descriptor() const = 0;
  /// One vector per text; throws Error(argument) on an empty list.
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts);

 protected:
  virtual std::vector<EmbeddingVector> do_embed(std::span<const std::string> texts) = 0;
};

class Narrator {
 public:
  virtual ~Narrator() = default;

  virtual ProviderDescriptor descriptor() const = 0;
  virtual double min_clip_seconds() const { return 0.0; }
  /// k narrations spanning the clip.
  std::vector<Narration> narrate(const VideoSegment& clip, int k);

 protected:
  virtual std::vector<Narration> do_narrate(const VideoSegment& clip, int k) = 0;
};

class VisionEncoder {
 public:
  virtual ~VisionEncoder() = default;

  virtual ProviderDescriptor descriptor() const = 0;
  VisionTokenBlock encode(std::span<const VideoSegment> segments);

 protected:
  virtual VisionTokenBlock do_encode(std::span<const VideoSegment> segments) = 0;
};

/// Handles to every model service a pipeline may call. The summarizer and
/// goal generator default to `llm` when unset, but may be different models.
struct Providers {
  std::shared_ptr<LanguageModel> llm;
  std::shared_ptr<Embedder> embedder;
  std::shared_ptr<Narrator> narrator;
  std::shared_ptr<VisionEncoder> vision;
  std::shared_ptr<LanguageModel> summarizer_llm;
  std::shared_ptr<LanguageModel> goal_llm;

  LanguageModel& summarizer() const;
  LanguageModel& goal_generator() const;
};

}  // namespace vidassist
