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

#include "vidassist/providers/interfaces.hpp"

#include <cctype>

#include "vidassist/core/errors.hpp"

namespace vidassist {

const char* to_string(ProviderKind kind) noexcept {
  switch (kind) {
    case ProviderKind::llm: return "llm";
    case ProviderKind::embedder: return "embedder";
    case ProviderKind::narrator: return "narrator";
    case ProviderKind::vision_encoder: return "vision_encoder";
  }
  return "llm";
}

int HeuristicTokenizer::count(std::string_view text) const {
  return static_cast<int>((text.size() + 3) / 4);
}

int WordTokenizer::count(std::string_view text) const {
  int words = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

std::string LanguageModel::complete(const CompletionRequest& request) {
  if (request.max_new_tokens < 0) throw_argument("max_new_tokens must be >= 0");
  const auto desc = descriptor();
  const int reserved = request.vision_block ? request.vision_block->token_count : 0;
  if (desc.context_limit) {
    const int used = tokenizer().count(request.prompt) + reserved;
    if (used > *desc.context_limit) {
      throw Error(ErrorKind::budget, "context_overflow",
                  desc.name + ": prompt needs " + std::to_string(used) + " tokens, limit is " +
                      std::to_string(*desc.context_limit));
    }
  }
  if (request.max_new_tokens == 0) return {};
  return do_complete(request);
}

std::vector<EmbeddingVector> Embedder::embed(std::span<const std::string> texts) {
  if (texts.empty()) throw_argument("embed() needs at least one text");
  auto out = do_embed(texts);
  if (out.size() != texts.size()) {
    throw ProviderError("bad_response",
                        descriptor().name + ": returned " + std::to_string(out.size()) +
                            " vectors for " + std::to_string(texts.size()) + " texts",
                        false, 1);
  }
  return out;
}

std::vector<Narration> Narrator::narrate(const VideoSegment& clip, int k) {
  if (k < 1) throw_argument("narrate() needs k >= 1");
  if (clip.frame_refs.empty() && clip.end_s <= clip.start_s) {
    throw_argument("narrate() needs a non-empty clip");
  }
  const double length = clip.end_s - clip.start_s;
  if (length < min_clip_seconds()) {
    throw Error(ErrorKind::argument, "clip_too_short",
                descriptor().name + ": clip of " + std::to_string(length) +
                    " s is shorter than the minimum of " + std::to_string(min_clip_seconds()) +
                    " s");
  }
  return do_narrate(clip, k);
}

VisionTokenBlock VisionEncoder::encode(std::span<const VideoSegment> segments) {
  if (segments.empty()) throw_argument("encode() needs at least one segment");
  return do_encode(segments);
}

LanguageModel& Providers::summarizer() const {
  if (summarizer_llm) return *summarizer_llm;
  if (!llm) throw Error(ErrorKind::provider, "no_llm", "no language model configured");
  return *llm;
}

LanguageModel& Providers::goal_generator() const {
  if (goal_llm) return *goal_llm;
  if (!llm) throw Error(ErrorKind::provider, "no_llm", "no language model configured");
  return *llm;
}

}  // namespace vidassist
