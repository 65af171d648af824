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

#include <chrono>
#include <memory>
#include <string>

#include "vidassist/core/io.hpp"
#include "vidassist/providers/interfaces.hpp"

// JSON-over-HTTP adapters, one endpoint per provider kind:
//   POST /v1/complete {prompt, max_new_tokens, vision_ref?, vision_tokens?} -> {completion}
//   POST /v1/embed    {texts}                                              -> {embeddings}
//   POST /v1/narrate  {clip_ref, k}                                        -> {narrations}
//   POST /v1/encode   {clip_refs}                                          -> {token_count, payload}
namespace vidassist::remote {

struct RemoteConfig {
  std::string endpoint;                 // "http://host:port"
  std::string name = "remote";
  std::string token_env = "VIDASSIST_PROVIDER_TOKEN";  // bearer token source; unset = no auth
  int context_limit = 2048;            // llm only
  int max_attempts = 3;
  std::chrono::milliseconds backoff{100};  // doubled after each failed attempt
  std::chrono::milliseconds timeout{30000};
  double min_clip_seconds = 0.0;        // narrator only
};

/// Reads {"endpoint", "name"?, "token_env"?, "context_limit"?, "max_attempts"?,
/// "backoff_ms"?, "timeout_ms"?, "min_clip_seconds"?}.
RemoteConfig remote_config_from_json(const Json& j, const std::string& where);

/// POSTs `body` to `path`, retrying transport failures, 429 and 5xx with
/// exponential backoff. Other 4xx fail at once. Throws ProviderError.
Json post_with_retry(const RemoteConfig& cfg, const std::string& path, const Json& body);

class RemoteLanguageModel final : public LanguageModel {
 public:
  explicit RemoteLanguageModel(RemoteConfig cfg);
  ProviderDescriptor descriptor() const override;
  const Tokenizer& tokenizer() const override { return tokenizer_; }

 protected:
  std::string do_complete(const CompletionRequest& request) override;

 private:
  RemoteConfig cfg_;
  HeuristicTokenizer tokenizer_;
};

class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteConfig cfg);
  ProviderDescriptor descriptor() const override;

 protected:
  std::vector<EmbeddingVector> do_embed(std::span<const std::string> texts) override;

 private:
  RemoteConfig cfg_;
};

class RemoteNarrator final : public Narrator {
 public:
  explicit RemoteNarrator(RemoteConfig cfg);
  ProviderDescriptor descriptor() const override;
  double min_clip_seconds() const override { return cfg_.min_clip_seconds; }

 protected:
  std::vector<Narration> do_narrate(const VideoSegment& clip, int k) override;

 private:
  RemoteConfig cfg_;
};

/// Failures tell the caller to fall back to the text-only pipeline.
class RemoteVisionEncoder final : public VisionEncoder {
 public:
  explicit RemoteVisionEncoder(RemoteConfig cfg);
  ProviderDescriptor descriptor() const override;

 protected:
  VisionTokenBlock do_encode(std::span<const VideoSegment> segments) override;

 private:
  RemoteConfig cfg_;
};

}  // namespace vidassist::remote
