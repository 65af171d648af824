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
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "vidassist/core/types.hpp"
#include "vidassist/vocab_map/embedding_cache.hpp"

namespace vidassist {

struct TermMatch {
  std::string term;
  std::size_t index = 0;
  double cosine = 0.0;
};

/// Candidate with the highest cosine to `word`; the lowest index wins ties.
/// Throws Error(argument) when `candidates` is empty.
TermMatch nearest_term(const std::string& word, std::span<const std::string> candidates,
                       EmbeddingCache& cache);

struct MappingResult {
  std::string sentence;
  ActionLabel label;
  double verb_sim = 0.0;
  double noun_sim = 0.0;
  std::string verb_word;  // sentence word that selected the verb
  std::string noun_word;
  bool feasibility_adjusted = false;
};

/// Maps free-form sentences onto a closed vocabulary by word-level cosine
/// similarity. Verb and noun embeddings are computed once per mapper.
class VocabMapper {
 public:
  VocabMapper(Vocabulary vocab, std::shared_ptr<EmbeddingCache> cache,
              std::unordered_set<std::string> stopwords = {});

  /// Throws Error(data, "unmappable") when the sentence has no content words.
  MappingResult map_sentence(const std::string& sentence) const;
  /// Unmappable sentences become NO_ACTION; the length always matches.
  ActionSequence map_sequence(const std::vector<std::string>& sentences) const;

  const Vocabulary& vocabulary() const noexcept { return vocab_; }

 private:
  Vocabulary vocab_;
  std::shared_ptr<EmbeddingCache> cache_;
  std::unordered_set<std::string> stopwords_;
  std::vector<EmbeddingVector> verb_vecs_;
  std::vector<EmbeddingVector> noun_vecs_;
};

MappingResult map_sentence(const std::string& sentence, const Vocabulary& vocab,
                           std::shared_ptr<Embedder> embedder);
ActionSequence map_sequence(const std::vector<std::string>& sentences, const Vocabulary& vocab,
                            std::shared_ptr<Embedder> embedder);

}  // namespace vidassist
