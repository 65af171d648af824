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

#include "vidassist/vocab_map/mapper.hpp"

#include "vidassist/core/errors.hpp"
#include "vidassist/kernels/cosine.hpp"
#include "vidassist/vocab_map/text.hpp"

namespace vidassist {

TermMatch nearest_term(const std::string& word, std::span<const std::string> candidates,
                       EmbeddingCache& cache) {
  if (candidates.empty()) throw_argument("nearest_term: empty candidate list for '" + word + "'");
  const auto query = cache.get(word);
  const auto rows = cache.get_many({candidates.begin(), candidates.end()});
  const auto scores = kernels::cosine_scores(query, rows);
  const std::size_t best = kernels::argmax(scores);
  return {candidates[best], best, scores[best]};
}

VocabMapper::VocabMapper(Vocabulary vocab, std::shared_ptr<EmbeddingCache> cache,
                         std::unordered_set<std::string> stopwords)
    : vocab_(std::move(vocab)), cache_(std::move(cache)), stopwords_(std::move(stopwords)) {
  if (!cache_) throw_argument("VocabMapper needs an embedding cache");
  if (stopwords_.empty()) stopwords_ = default_stopwords();
  verb_vecs_ = cache_->get_many(vocab_.verbs());
  noun_vecs_ = cache_->get_many(vocab_.nouns());
}

namespace {

struct BestPerClass {
  std::vector<double> sim;        // best similarity per class entry
  std::vector<std::size_t> word;  // word index that achieved it
};

BestPerClass best_over_words(const std::vector<EmbeddingVector>& word_vecs,
                             const std::vector<EmbeddingVector>& class_vecs) {
  BestPerClass out{std::vector<double>(class_vecs.size(), -2.0),
                   std::vector<std::size_t>(class_vecs.size(), 0)};
  for (std::size_t w = 0; w < word_vecs.size(); ++w) {
    const auto scores = kernels::cosine_scores(word_vecs[w], class_vecs);
    for (std::size_t c = 0; c < scores.size(); ++c) {
      if (scores[c] > out.sim[c]) {
        out.sim[c] = scores[c];
        out.word[c] = w;
      }
    }
  }
  return out;
}

}  // namespace

MappingResult VocabMapper::map_sentence(const std::string& sentence) const {
  const auto words = content_words(sentence, stopwords_);
  if (words.empty()) {
    throw Error(ErrorKind::data, "unmappable",
                "sentence has no alphabetic content words: \"" + sentence + "\"");
  }
  const auto word_vecs = cache_->get_many(words);
  const auto verbs = best_over_words(word_vecs, verb_vecs_);
  const auto nouns = best_over_words(word_vecs, noun_vecs_);

  std::size_t v = kernels::argmax(verbs.sim);
  std::size_t n = kernels::argmax(nouns.sim);
  MappingResult r;
  r.sentence = sentence;
  if (!vocab_.feasible(static_cast<int>(v), static_cast<int>(n))) {
    // Project onto the feasible set: maximize the similarity sum.
    double best = -1e300;
    for (const auto& [fv, fn] : vocab_.actions()) {
      const double s = verbs.sim[fv] + nouns.sim[fn];
      if (s > best) {
        best = s;
        v = static_cast<std::size_t>(fv);
        n = static_cast<std::size_t>(fn);
      }
    }
    r.feasibility_adjusted = true;
  }
  r.label = ActionLabel::from_indices(vocab_, static_cast<int>(v), static_cast<int>(n));
  r.verb_sim = verbs.sim[v];
  r.noun_sim = nouns.sim[n];
  r.verb_word = words[verbs.word[v]];
  r.noun_word = words[nouns.word[n]];
  return r;
}

ActionSequence VocabMapper::map_sequence(const std::vector<std::string>& sentences) const {
  ActionSequence out;
  out.labels.reserve(sentences.size());
  for (const auto& s : sentences) {
    try {
      out.labels.push_back(map_sentence(s).label);
    } catch (const Error& e) {
      if (e.code() != "unmappable") throw;
      out.labels.push_back(ActionLabel::no_action());
    }
  }
  out.horizon = static_cast<int>(out.labels.size());
  return out;
}

MappingResult map_sentence(const std::string& sentence, const Vocabulary& vocab,
                           std::shared_ptr<Embedder> embedder) {
  VocabMapper mapper(vocab, std::make_shared<EmbeddingCache>(std::move(embedder)));
  return mapper.map_sentence(sentence);
}

ActionSequence map_sequence(const std::vector<std::string>& sentences, const Vocabulary& vocab,
                            std::shared_ptr<Embedder> embedder) {
  VocabMapper mapper(vocab, std::make_shared<EmbeddingCache>(std::move(embedder)));
  return mapper.map_sequence(sentences);
}

}  // namespace vidassist
