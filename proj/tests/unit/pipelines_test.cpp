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

#include "scripted_llm.hpp"
#include "test_support.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/pipelines/predictor.hpp"

namespace vidassist {
namespace {

using testing_support::narration;
using testing_support::ScriptedLlm;

VisualHistory kitchen_history(std::optional<std::string> goal = std::nullopt) {
  VisualHistory h;
  h.narrations = {narration("take cup", 0, 1), narration("wash cup", 1, 2)};
  h.goal = std::move(goal);
  return h;
}

Providers providers_with(std::shared_ptr<LanguageModel> llm) {
  Providers p;
  p.llm = std::move(llm);
  p.embedder = std::make_shared<stubs::BagOfWordsEmbedder>();
  p.vision = std::make_shared<stubs::StubVisionEncoder>();
  return p;
}

std::shared_ptr<const ExamplePool> pool(EmbeddingCache& cache) {
  return std::make_shared<ExamplePool>(
      std::vector<PromptExample>{{"x1", {"take cup", "put cup"}, "serve tea", std::nullopt},
                                 {"x2", {"cut bread"}, "make toast", std::nullopt}},
      cache);
}

TEST(PredictorConfig, FactoriesAndValidation) {
  const auto s = PredictorConfig::socratic(Task::lta, 20);
  EXPECT_EQ(s.vision_tokens, 0);
  const auto v = PredictorConfig::vclm(Task::vpa, 3);
  EXPECT_EQ(v.vision_tokens, kVisionTokens);
  auto bad = s;
  bad.vision_tokens = 10;
  EXPECT_THROW(bad.validate(), Error);
  bad = s;
  bad.use_text_history = false;
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_EQ(predictor_config_from_json(Json{{"kind", "vclm"}}).vision_tokens, kVisionTokens);
  EXPECT_EQ(predictor_config_to_json(predictor_config_from_json(predictor_config_to_json(v))),
            predictor_config_to_json(v));
  EXPECT_THROW(predictor_config_from_json(Json{{"z", 0}}), Error);
}

TEST(Predictor, SocraticMapsParsedSentencesToZLabels) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{" put cup\n4. open pan"});
  auto cache = testing_support::bow_cache();
  Predictor p(PredictorConfig::socratic(Task::lta, 3), providers_with(llm), pool(*cache), cache,
              testing_support::mini_vocab());
  const auto r = p.predict(kitchen_history());
  EXPECT_EQ(r.raw_sentences, (std::vector<std::string>{"put cup", "open pan"}));
  ASSERT_TRUE(r.mapped);
  ASSERT_EQ(r.mapped->size(), 3u);
  EXPECT_EQ(r.mapped->labels[0].text(), "put cup");
  EXPECT_EQ(r.mapped->labels[1].text(), "open pan");
  EXPECT_TRUE(r.mapped->labels[2].is_no_action());
  EXPECT_EQ(r.prompt.examples_used.front(), "x1");
  EXPECT_TRUE(llm->vision_blocks().empty());
}

TEST(Predictor, VclmReservesVisionTokensAndSendsTheBlock) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{" put cup"}, 600);
  auto cache = testing_support::bow_cache();
  auto cfg = PredictorConfig::vclm(Task::lta, 1);
  cfg.context_limit = 600;
  Predictor p(cfg, providers_with(llm), pool(*cache), cache, testing_support::mini_vocab());
  const auto r = p.predict(kitchen_history());
  EXPECT_EQ(r.prompt.reserved_vision_tokens, 256);
  EXPECT_LE(r.prompt.token_count + 256, 600);
  ASSERT_EQ(llm->vision_blocks().size(), 1u);
  EXPECT_EQ(llm->vision_blocks()[0].token_count, 256);
}

TEST(Predictor, VclmUnderTightBudgetDropsExamplesSocraticKeeps) {
  auto cache = testing_support::bow_cache();
  auto run = [&](PredictorConfig cfg, int limit) {
    cfg.context_limit = limit;
    auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{" put cup"}, limit);
    return Predictor(cfg, providers_with(llm), pool(*cache), cache, testing_support::mini_vocab())
        .predict(kitchen_history());
  };
  const int full = run(PredictorConfig::socratic(Task::lta, 1), 4096).prompt.token_count;
  // Room for everything as text, one token short once the vision block is reserved.
  const int limit = full + kVisionTokens - 1;
  EXPECT_EQ(run(PredictorConfig::socratic(Task::lta, 1), limit).prompt.examples_used.size(), 2u);
  const auto v = run(PredictorConfig::vclm(Task::lta, 1), limit);
  EXPECT_EQ(v.prompt.examples_used, (std::vector<std::string>{"x1"}));
  EXPECT_LE(v.prompt.token_count + kVisionTokens, limit);
}

TEST(Predictor, NoTextHistoryUsesVisionOnlyPrompt) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{"1. put cup"});
  auto cache = testing_support::bow_cache();
  auto cfg = PredictorConfig::vclm(Task::lta, 2);
  cfg.use_text_history = false;
  Predictor p(cfg, providers_with(llm), pool(*cache), cache, testing_support::mini_vocab());
  const auto r = p.predict(kitchen_history());
  EXPECT_EQ(r.prompt.text.find("take cup"), std::string::npos);
  EXPECT_EQ(query_section(r.prompt.text), "");
  EXPECT_EQ(r.mapped->labels[0].text(), "put cup");
}

TEST(Predictor, RetriesOnceThenFlagsParseFailure) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{"", "  "});
  auto cache = testing_support::bow_cache();
  auto cfg = PredictorConfig::socratic(Task::lta, 2);
  cfg.open_set_output = true;
  Predictor p(cfg, providers_with(llm), nullptr, cache);
  const auto r = p.predict(kitchen_history());
  EXPECT_TRUE(r.parse_failed);
  EXPECT_EQ(r.completions.size(), 2u);
  EXPECT_FALSE(r.mapped);
  try {
    p.predict_next(kitchen_history());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::prediction);
    EXPECT_EQ(e.code(), "empty_prediction");
  }
}

TEST(Predictor, SecondAttemptRecovers) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{"", " froth milk"});
  auto cfg = PredictorConfig::socratic(Task::vpa, 1);
  cfg.open_set_output = true;
  Predictor p(cfg, providers_with(llm), nullptr, testing_support::bow_cache());
  EXPECT_EQ(p.predict_next(kitchen_history("make a latte")), "froth milk");
  EXPECT_NE(llm->prompts().back().find("Goal: make a latte"), std::string::npos);
}

TEST(Predictor, RejectsMissingInputs) {
  auto llm = std::make_shared<ScriptedLlm>(std::vector<std::string>{"1. a"});
  auto cfg = PredictorConfig::socratic(Task::vpa, 1);
  cfg.open_set_output = true;
  Predictor p(cfg, providers_with(llm), nullptr, testing_support::bow_cache());
  EXPECT_THROW(p.predict(kitchen_history()), Error);  // no goal
  try {
    p.predict(VisualHistory{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "empty_history");
  }
  EXPECT_THROW(Predictor(PredictorConfig::socratic(Task::lta, 2), providers_with(llm), nullptr,
                         testing_support::bow_cache()),
               Error);  // closed-set needs a vocabulary
}

TEST(Predictor, SameCodePathForBothKindsGivesSameAnswer) {
  auto cache = testing_support::bow_cache();
  auto a = std::make_shared<ScriptedLlm>(std::vector<std::string>{" put cup"});
  auto b = std::make_shared<ScriptedLlm>(std::vector<std::string>{" put cup"});
  const auto s = Predictor(PredictorConfig::socratic(Task::lta, 1), providers_with(a), pool(*cache),
                           cache, testing_support::mini_vocab()).predict(kitchen_history());
  const auto v = Predictor(PredictorConfig::vclm(Task::lta, 1), providers_with(b), pool(*cache),
                           cache, testing_support::mini_vocab()).predict(kitchen_history());
  EXPECT_EQ(s.prompt.text, v.prompt.text);
  EXPECT_EQ(s.mapped, v.mapped);
}

}  // namespace
}  // namespace vidassist
