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

#include <gtest/gtest.h>

#include <thread>

#include "test_support.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/vocab_map/mapper.hpp"
#include "vidassist/vocab_map/text.hpp"

namespace vidassist {
namespace {

using testing_support::mini_vocab;

// Hand-placed word vectors so the nearest neighbours are known.
std::shared_ptr<Embedder> geometry() {
  return std::make_shared<stubs::VectorTableEmbedder>(std::map<std::string, std::vector<float>>{
      {"take", {1, 0, 0, 0}},   {"grab", {0.9f, 0.1f, 0, 0}}, {"put", {0, 1, 0, 0}},
      {"place", {0.1f, 0.9f, 0, 0}}, {"cup", {0, 0, 1, 0}},   {"mug", {0, 0, 0.95f, 0.05f}},
      {"knife", {0, 0, 0, 1}},  {"blade", {0, 0, 0.1f, 0.9f}}});
}

Vocabulary tiny() { return Vocabulary::make({"take", "put"}, {"cup", "knife"}, {{0, 0}, {1, 0}, {0, 1}}); }

TEST(Text, SplitsOnNonLettersAndLowercases) {
  EXPECT_EQ(split_words("A person's 2 CUPS-of milk."),
            (std::vector<std::string>{"a", "person", "s", "cups", "of", "milk"}));
  const auto words = content_words("A person takes the cup from the table", default_stopwords());
  EXPECT_EQ(words, (std::vector<std::string>{"person", "takes", "cup", "table"}));
}

TEST(Text, BundledStopwordFileMatchesCompiledList) {
  EXPECT_EQ(load_stopwords(testing_support::data_dir() / "stopwords.txt"), default_stopwords());
}

TEST(EmbeddingCache, MemoizesAndNormalizes) {
  auto cache = EmbeddingCache(geometry());
  const auto a = cache.get("grab");
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-6);
  double norm = 0;
  for (float x : a.values) norm += x * x;
  EXPECT_NEAR(norm, 1.0, 1e-6);
  cache.get_many({"grab", "put", "put"});
  EXPECT_EQ(cache.size(), 2u);
}

TEST(EmbeddingCache, ConcurrentReadersSeeOneValue) {
  auto cache = testing_support::bow_cache();
  std::vector<std::thread> threads;
  std::vector<EmbeddingVector> out(8);
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&, i] { out[i] = cache->get("pour the milk"); });
  for (auto& t : threads) t.join();
  for (const auto& v : out) EXPECT_EQ(v, out[0]);
  EXPECT_EQ(cache->size(), 1u);
}

TEST(NearestTerm, PicksClosestAndBreaksTiesByIndex) {
  EmbeddingCache cache(geometry());
  const std::vector<std::string> verbs = {"take", "put"};
  EXPECT_EQ(nearest_term("grab", verbs, cache).term, "take");
  EXPECT_EQ(nearest_term("place", verbs, cache).term, "put");
  // "cup" is orthogonal to both: the first entry wins.
  EXPECT_EQ(nearest_term("cup", verbs, cache).index, 0u);
  EXPECT_THROW(nearest_term("x", {}, cache), Error);
}

TEST(VocabMapper, MapsSynonymsOntoClasses) {
  VocabMapper m(tiny(), std::make_shared<EmbeddingCache>(geometry()));
  const auto r = m.map_sentence("A person grabs... no, grab the mug");
  EXPECT_EQ(r.label.text(), "take cup");
  EXPECT_EQ(r.verb_word, "grab");
  EXPECT_EQ(r.noun_word, "mug");
  EXPECT_FALSE(r.feasibility_adjusted);
}

TEST(VocabMapper, ProjectsInfeasiblePairs) {
  VocabMapper m(tiny(), std::make_shared<EmbeddingCache>(geometry()));
  // (put, knife) is not an admitted action.
  const auto r = m.map_sentence("place blade");
  EXPECT_TRUE(r.feasibility_adjusted);
  EXPECT_TRUE(tiny().feasible(r.label.verb_index, r.label.noun_index));
}

TEST(VocabMapper, UnmappableBecomesNoAction) {
  VocabMapper m(tiny(), std::make_shared<EmbeddingCache>(geometry()));
  try {
    m.map_sentence("the and of 42");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unmappable");
  }
  const auto seq = m.map_sequence({"grab cup", "...", "put cup"});
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_TRUE(seq.labels[1].is_no_action());
  EXPECT_EQ(seq.labels[2].text(), "put cup");
}

TEST(VocabMapper, ExactTermsMapToThemselvesOnMiniVocabulary) {
  const auto vocab = mini_vocab();
  VocabMapper m(vocab, testing_support::bow_cache());
  for (const auto& [v, n] : vocab.actions()) {
    const auto label = ActionLabel::from_indices(vocab, v, n);
    EXPECT_EQ(m.map_sentence(label.text()).label, label) << label.text();
  }
}

}  // namespace
}  // namespace vidassist
