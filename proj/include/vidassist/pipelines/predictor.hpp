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
#include <string>
#include <vector>

#include "vidassist/core/io.hpp"
#include "vidassist/prompting/prompt.hpp"
#include "vidassist/providers/interfaces.hpp"
#include "vidassist/vocab_map/mapper.hpp"

namespace vidassist {

enum class PredictorKind { socratic, vclm };

const char* to_string(PredictorKind kind) noexcept;
PredictorKind predictor_kind_from_string(std::string_view text);

struct PredictorConfig {
  PredictorKind kind = PredictorKind::socratic;
  Task task = Task::lta;  // selects the LTA or VPA prompt layout
  int z = 20;
  bool goal_conditioning = true;  // VPA only
  bool use_text_history = true;   // false only for the vclm ablation
  int context_limit = kDefaultContextLimit;
  int vision_tokens = 0;          // reserved for the vision block
  bool open_set_output = false;   // skip closed-set mapping
  int examples = kDefaultExampleCount;
  int max_new_tokens = 512;
  int attempts = 2;               // completions tried before giving up on an empty parse

  /// Socratic ⟹ no vision tokens and text history on; positive Z etc.
  void validate() const;

  static PredictorConfig socratic(Task task, int z);
  /// Reserves kVisionTokens for the vision block.
  static PredictorConfig vclm(Task task, int z);
};

/// Missing keys keep their defaults, except that "kind": "vclm" defaults
/// vision_tokens to 256.
PredictorConfig predictor_config_from_json(const Json& j, const std::string& where = "predictor");
Json predictor_config_to_json(const PredictorConfig& cfg);

struct Prediction {
  std::vector<std::string> raw_sentences;  // parsed, truncated to Z
  std::optional<ActionSequence> mapped;    // exactly Z labels unless open-set
  AssembledPrompt prompt;
  std::vector<std::string> completions;    // one per attempt
  bool parse_failed = false;               // every attempt parsed to nothing
  bool retrieval_fallback = false;
};

/// One code path for both predictor kinds: retrieve examples, assemble the
/// prompt, fit it next to the reserved vision tokens, complete, parse and
/// map. The kinds differ only in the reserved budget and the vision block.
class Predictor {
 public:
  /// `vocab` is required unless the config is open-set; `pool` may be null.
  Predictor(PredictorConfig cfg, Providers providers, std::shared_ptr<const ExamplePool> pool,
            std::shared_ptr<EmbeddingCache> cache, std::optional<Vocabulary> vocab = std::nullopt);

  const PredictorConfig& config() const noexcept { return cfg_; }
  const Providers& providers() const noexcept { return providers_; }
  EmbeddingCache& cache() const noexcept { return *cache_; }

  Prediction predict(const VisualHistory& history) const;
  Prediction predict(const VisualHistory& history, int z) const;

  /// Single next step (Z forced to 1), open-set text as the model wrote it.
  /// Throws Error(prediction, "empty_prediction") when nothing parses.
  std::string predict_next(const VisualHistory& history, Prediction* details = nullptr) const;

 private:
  PredictorConfig cfg_;
  Providers providers_;
  std::shared_ptr<const ExamplePool> pool_;
  std::shared_ptr<EmbeddingCache> cache_;
  std::optional<VocabMapper> mapper_;
};

}  // namespace vidassist
