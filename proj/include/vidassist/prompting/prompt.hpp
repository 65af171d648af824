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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vidassist/core/io.hpp"
#include "vidassist/core/types.hpp"
#include "vidassist/providers/interfaces.hpp"
#include "vidassist/vocab_map/embedding_cache.hpp"

namespace vidassist {

/// An in-context example: narrations of a full training video plus an
/// optional goal. The embedding is of the space-joined narrations.
struct PromptExample {
  std::string example_id;
  std::vector<std::string> narrations;
  std::optional<std::string> goal;
  std::optional<EmbeddingVector> embedding;
};

/// Read-only pool of examples with embeddings filled in.
class ExamplePool {
 public:
  ExamplePool() = default;
  /// Computes missing embeddings through `cache`.
  ExamplePool(std::vector<PromptExample> examples, EmbeddingCache& cache);

  const std::vector<PromptExample>& examples() const noexcept { return examples_; }
  bool empty() const noexcept { return examples_.empty(); }
  std::size_t size() const noexcept { return examples_.size(); }

 private:
  std::vector<PromptExample> examples_;
};

std::vector<PromptExample> load_example_pool(const std::filesystem::path& path);
void save_example_pool(const std::vector<PromptExample>& examples,
                       const std::filesystem::path& path);
Json example_to_json(const PromptExample& example);
PromptExample example_from_json(const Json& j, const std::string& where);

struct RetrievedExample {
  PromptExample example;
  double similarity = 0.0;
};

struct Retrieval {
  std::vector<RetrievedExample> examples;  // most similar first
  bool fallback = false;                   // empty history: first k pool entries
};

inline constexpr int kDefaultExampleCount = 8;

/// Top-k pool entries by cosine to the joined history narrations; ties
/// keep pool order; k is clipped to the pool size.
Retrieval retrieve_examples(const std::vector<std::string>& history_narrations,
                            const ExamplePool& pool, int k, EmbeddingCache& cache);

/// A prompt split into droppable pieces. Examples are in retrieval order.
struct PromptParts {
  std::string header;
  std::vector<std::string> example_blocks;
  std::vector<std::string> example_ids;
  std::vector<double> similarities;
  std::string history_block;  // ends with the bare "T." continuation cue
  std::string continuation_cue;

  /// Renders with only the examples at `kept` (ascending positions).
  std::string render(const std::vector<std::size_t>& kept) const;
  std::string render_all() const;
};

struct AssembledPrompt {
  std::string text;
  int token_count = 0;
  std::vector<std::string> examples_used;
  int reserved_vision_tokens = 0;
  std::string continuation_cue;
  bool tokenizer_exact = true;
};

/// LTA layout: task description, example blocks, then the query history
/// numbered first_index..T-1 and a trailing "T." cue.
PromptParts lta_prompt_parts(const std::vector<RetrievedExample>& examples,
                             const VisualHistory& history, int z, int first_index = 1);

/// VPA layout: like LTA with a "Goal:" line heading every action list.
/// With goal_conditioning off, every Goal line is omitted.
PromptParts vpa_prompt_parts(const std::string& goal, const std::vector<RetrievedExample>& examples,
                             const VisualHistory& history, int z, bool goal_conditioning = true,
                             int first_index = 1);

/// The bare prompt used when a vision-conditioned model gets no text
/// history: a single instruction line and no examples.
PromptParts vision_only_prompt_parts(int z);

AssembledPrompt build_lta_prompt(const std::vector<RetrievedExample>& examples,
                                 const VisualHistory& history, int z,
                                 const Tokenizer& tokenizer = HeuristicTokenizer{});
AssembledPrompt build_vpa_prompt(const std::string& goal,
                                 const std::vector<RetrievedExample>& examples,
                                 const VisualHistory& history, int z, bool goal_conditioning = true,
                                 const Tokenizer& tokenizer = HeuristicTokenizer{});

inline constexpr int kDefaultContextLimit = 2048;
inline constexpr int kVisionTokens = 256;

/// Drops the least similar examples one at a time until
/// token_count + reserved <= context_limit. Survivors keep their order and
/// the header and history are never dropped; throws Error(budget,
/// "history_overflow") if the history alone does not fit.
AssembledPrompt fit_to_budget(const PromptParts& parts, const Tokenizer& tokenizer,
                              int context_limit = kDefaultContextLimit, int reserved = 0);

/// Keeps lines of the form <ws>digits"."<rest>, strips the numeric prefix,
/// trims, preserves order. Lines with nothing after the prefix are dropped.
std::vector<std::string> parse_completion(const std::string& text);

/// Parses a model continuation of a prompt ending in `cue` (e.g. "9."). If
/// the completion already starts with a numbered line it is parsed as is;
/// otherwise the cue is prepended so the first item is not lost.
std::vector<std::string> parse_continuation(const std::string& cue, const std::string& completion);

/// "1. a\n2. b" style list, one item per line, no indentation.
std::string numbered_list(const std::vector<std::string>& items, int first_index = 1,
                          const std::string& indent = "");

/// Renders the goal-conditioned summarization prompt.
std::string summarization_prompt(const std::string& goal, const std::vector<std::string>& narrations);
/// Renders the goal-generation prompt.
std::string goal_generation_prompt(const std::vector<std::string>& narrations);

/// Section of a rendered prediction prompt holding the current video's
/// history ("" if the marker is absent). Stubs key fixtures on it.
std::string query_section(const std::string& prompt);
/// Z announced by a prediction prompt's task description, if any.
std::optional<int> requested_horizon(const std::string& prompt);
/// N of a trailing bare "N." cue on the prompt's last line, if any.
std::optional<int> trailing_cue(const std::string& prompt);
/// True for prompts rendered by summarization_prompt.
bool is_summarization_prompt(const std::string& prompt);
/// True for prompts rendered by goal_generation_prompt.
bool is_goal_generation_prompt(const std::string& prompt);
/// Narrations listed inside a summarization or goal-generation prompt.
std::vector<std::string> listed_narrations(const std::string& prompt);

inline constexpr const char* kHistoryMarker = "#Visual history from current video:";
inline constexpr const char* kExampleMarker = "#Prompt example from training set:";

}  // namespace vidassist
