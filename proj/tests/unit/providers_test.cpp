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

#include <httplib.h>

#include <atomic>
#include <thread>

#include "test_support.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/prompting/prompt.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/providers/remote.hpp"
#include "vidassist/providers/script_oracle.hpp"
#include "vidassist/providers/stubs.hpp"

namespace vidassist {
namespace {

using testing_support::narration;
using testing_support::script;

// Prompt as the session engine would render it for a given history.
std::string next_step_prompt(const ActivityScript& s, const std::vector<std::string>& done_ids) {
  VisualHistory h;
  double t = 0;
  for (const auto& id : done_ids) {
    h.narrations.push_back(narration(stubs::step_narration(s.step(id)), t, t + 1));
    t += 1;
  }
  return vpa_prompt_parts(s.goal_text(), {}, h, 1).render_all();
}

std::string ask(LanguageModel& llm, const std::string& prompt) {
  const auto items = parse_continuation(std::to_string(trailing_cue(prompt).value()) + ".",
                                        llm.complete({prompt, 64, std::nullopt}));
  return items.empty() ? "" : items.front();
}

TEST(Stubs, FnvIsStable) {
  EXPECT_EQ(stubs::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(stubs::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Stubs, BagOfWordsSeparatesDisjointTexts) {
  auto e = std::make_shared<stubs::BagOfWordsEmbedder>();
  const std::vector<std::string> texts = {"pour the milk", "milk pour", "cut bread"};
  const auto v = e->embed(texts);
  EXPECT_NEAR(cosine(v[0], v[1]), 1.0, 1e-6);
  EXPECT_NEAR(cosine(v[0], v[2]), 0.0, 1e-6);
  EXPECT_THROW(e->embed(std::span<const std::string>{}), Error);
}

TEST(Stubs, SynonymTableCollapsesDishWords) {
  auto e = stubs::load_table_embedder(testing_support::data_dir() / "synonyms.json");
  const std::vector<std::string> texts = {"make a latte", "make a caprese salad", "make a blt sandwich"};
  const auto v = e->embed(texts);
  EXPECT_NEAR(cosine(v[0], v[1]), 1.0, 1e-6);
  EXPECT_NEAR(cosine(v[1], v[2]), 1.0, 1e-6);
}

TEST(Stubs, FixtureLlmMatchesQuerySectionOnly) {
  stubs::FixtureLlm llm({{"pour milk", "1. froth milk"}}, "1. idle");
  // An example block mentions the key; the query does not.
  const auto prompt =
      lta_prompt_parts({{{"e", {"pour milk"}, std::nullopt, std::nullopt}, 1.0}},
                       VisualHistory{{}, {narration("cut bread", 0, 1)}, {}, {}}, 2)
          .render_all();
  EXPECT_EQ(llm.complete({prompt, 64, std::nullopt}), "1. idle");
  EXPECT_EQ(llm.complete({"pour milk", 64, std::nullopt}), "1. froth milk");
  EXPECT_EQ(llm.calls(), 2);
}

TEST(Stubs, BudgetIsCheckedBeforeTheCall) {
  stubs::FixtureLlm llm({}, "x", 10, std::make_shared<WordTokenizer>());
  try {
    llm.complete({"a b c d e f g h", 8, VisionTokenBlock{4, "v"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "context_overflow");
  }
  EXPECT_EQ(llm.calls(), 0);
  EXPECT_EQ(llm.complete({"a b", 0, std::nullopt}), "");
  llm.complete({"a b", 8, VisionTokenBlock{4, "v"}});
  ASSERT_EQ(llm.vision_blocks().size(), 1u);
  EXPECT_EQ(llm.vision_blocks()[0].payload, "v");
}

TEST(Stubs, RandomPlannerIsDeterministicAndFeasible) {
  const auto vocab = testing_support::mini_vocab();
  stubs::RandomActionLlm a(vocab, 3), b(vocab, 3);
  const std::string prompt = "Predict the next 5 actions\n" + std::string(kHistoryMarker) + "\n    1.";
  const auto out = a.complete({prompt, 256, std::nullopt});
  EXPECT_EQ(out, b.complete({prompt, 256, std::nullopt}));
  const auto items = parse_continuation("1.", out);
  ASSERT_EQ(items.size(), 5u);
  for (const auto& item : items) {
    const auto sp = item.find(' ');
    const auto v = vocab.verb_index(item.substr(0, sp));
    const auto n = vocab.noun_index(item.substr(sp + 1));
    ASSERT_TRUE(v && n) << item;
    EXPECT_TRUE(vocab.feasible(*v, *n));
  }
}

TEST(Stubs, GroundTruthNarratorPrefersLabelsThenOverlap) {
  stubs::GroundTruthNarrator n({narration("A person pours milk", 0, 3), narration("A person froths milk", 3, 6)});
  const auto a = n.narrate({2.0, 4.5, {}, std::nullopt}, 3);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].text, "A person froths milk");
  EXPECT_DOUBLE_EQ(a.front().start_s, 2.0);
  EXPECT_DOUBLE_EQ(a.back().end_s, 4.5);
  EXPECT_EQ(n.narrate({10, 12, {}, std::nullopt}, 1)[0].text, "A person looks around the kitchen");
}

TEST(Stubs, VisionEncoderHashesInput) {
  stubs::StubVisionEncoder enc;
  const std::vector<VideoSegment> a = {{0, 2, {"f1"}, std::nullopt}};
  const std::vector<VideoSegment> b = {{0, 2, {"f2"}, std::nullopt}};
  EXPECT_EQ(enc.encode(a).token_count, 256);
  EXPECT_NE(enc.encode(a).payload, enc.encode(b).payload);
}

TEST(Oracle, PerfectWalksTheScriptThenSignalsDone) {
  const auto s = script("latte");
  stubs::ScriptOracleLlm llm(s, stubs::OracleMode::perfect);
  std::vector<std::string> done = s.partial_progress_step_ids();
  for (const auto& expected : s.evaluation_step_ids()) {
    const auto got = ask(llm, next_step_prompt(s, done));
    EXPECT_EQ(got, s.step(expected).description);
    done.push_back(expected);
  }
  EXPECT_EQ(ask(llm, next_step_prompt(s, done)), stubs::kOracleDoneText);
}

TEST(Oracle, DeviationModes) {
  const auto s = script("latte");
  const auto start = s.partial_progress_step_ids();
  stubs::ScriptOracleLlm stuck(s, stubs::OracleMode::stuck);
  EXPECT_EQ(ask(stuck, next_step_prompt(s, start)), s.steps().front().description);
  stubs::ScriptOracleLlm irrelevant(s, stubs::OracleMode::irrelevant);
  EXPECT_EQ(ask(irrelevant, next_step_prompt(s, start)), stubs::kOracleIrrelevantText);

  stubs::ScriptOracleLlm mis(s, stubs::OracleMode::misordered);
  const auto p = next_step_prompt(s, start);
  const auto first = ask(mis, p);
  stubs::ScriptOracleLlm perfect(s, stubs::OracleMode::perfect);
  EXPECT_NE(first, ask(perfect, p));
  // Same history again: back on script.
  EXPECT_EQ(ask(mis, p), s.step(s.evaluation_step_ids().front()).description);
}

TEST(Oracle, RepeatOnceDeviatesOnlyAfterAnAssistedStep) {
  const auto s = script("caprese");
  stubs::ScriptOracleLlm llm(s, stubs::OracleMode::repeat_once);
  auto done = s.partial_progress_step_ids();
  EXPECT_EQ(ask(llm, next_step_prompt(s, done)), s.step(s.evaluation_step_ids()[0]).description);
  done.push_back(s.evaluation_step_ids()[0]);
  EXPECT_EQ(ask(llm, next_step_prompt(s, done)), s.steps().front().description);
  EXPECT_EQ(ask(llm, next_step_prompt(s, done)), s.step(s.evaluation_step_ids()[1]).description);
}

TEST(Oracle, AnswersSummaryAndGoalPrompts) {
  const auto s = script("latte");
  stubs::ScriptOracleLlm llm(s, stubs::OracleMode::perfect);
  const auto summary =
      parse_completion(llm.complete({summarization_prompt("make a latte", {"A person a", "A person a", "A person b"}), 256, {}}));
  EXPECT_EQ(summary, (std::vector<std::string>{"A person a", "A person b"}));
  const auto goal = Json::parse(llm.complete({goal_generation_prompt({"A person a"}), 256, {}}));
  EXPECT_EQ(goal[0]["user_goal"], "They wanted to make a latte");
  EXPECT_THROW(stubs::oracle_mode_from_string("lazy"), Error);
}

TEST(Registry, BuildsEachStubKind) {
  ProviderContext ctx;
  ctx.base_dir = testing_support::data_dir();
  ctx.script = script("blt");
  ctx.vocabulary = testing_support::mini_vocab();
  auto p = build_providers(oracle_provider_spec("stuck", testing_support::data_dir() / "synonyms.json"), ctx);
  EXPECT_EQ(p.llm->descriptor().name, "oracle-stuck");
  EXPECT_EQ(&p.summarizer(), p.llm.get());
  ASSERT_TRUE(p.embedder && p.narrator && p.vision);

  auto r = build_providers(Json{{"llm", {{"type", "random"}, {"seed", 1}}}}, ctx);
  EXPECT_EQ(r.llm->descriptor().kind, ProviderKind::llm);
  auto f = build_providers(Json{{"llm", {{"type", "fixture"}, {"path", "mini/cheat_lta.json"}}}}, ctx);
  EXPECT_TRUE(f.llm);

  EXPECT_THROW(build_providers(Json{{"llm", {{"type", "magic"}}}}, ctx), Error);
  EXPECT_THROW(build_providers(Json{{"llm", {{"type", "oracle"}, {"mode", "perfect"}}}}, ProviderContext{}), Error);
  EXPECT_THROW(build_providers(Json::array(), ctx), Error);
}

// --- remote adapters against an in-process server -------------------------

class FakeModelServer {
 public:
  FakeModelServer() {
    server_.Post("/v1/complete", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = ++complete_calls_;
      if (n <= fail_first_) {
        res.status = 503;
        return;
      }
      const auto body = Json::parse(req.body);
      res.set_content(Json{{"completion", " echo " + std::to_string(body["prompt"].get<std::string>().size())}}.dump(),
                      "application/json");
    });
    server_.Post("/v1/embed", [](const httplib::Request& req, httplib::Response& res) {
      Json out = Json::array();
      for (std::size_t i = 0; i < Json::parse(req.body)["texts"].size(); ++i) out.push_back({1.0, double(i)});
      res.set_content(Json{{"embeddings", out}}.dump(), "application/json");
    });
    server_.Post("/v1/narrate", [](const httplib::Request&, httplib::Response& res) {
      res.status = 400;
      res.set_content("bad clip", "text/plain");
    });
    server_.Post("/v1/encode", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not json", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeModelServer() {
    server_.stop();
    thread_.join();
  }

  remote::RemoteConfig config() const {
    remote::RemoteConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_);
    c.backoff = std::chrono::milliseconds(1);
    c.timeout = std::chrono::milliseconds(5000);
    return c;
  }

  std::atomic<int> complete_calls_{0};
  int fail_first_ = 0;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(Remote, RetriesServiceUnavailableThenSucceeds) {
  FakeModelServer server;
  server.fail_first_ = 2;
  remote::RemoteLanguageModel llm(server.config());
  EXPECT_EQ(llm.complete({"hello", 16, std::nullopt}), " echo 5");
  EXPECT_EQ(server.complete_calls_.load(), 3);
}

TEST(Remote, GivesUpAfterMaxAttempts) {
  FakeModelServer server;
  server.fail_first_ = 100;
  remote::RemoteLanguageModel llm(server.config());
  try {
    llm.complete({"hello", 16, std::nullopt});
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.code(), "unavailable");
    EXPECT_TRUE(e.retriable());
    EXPECT_EQ(e.attempts(), 3);
  }
}

TEST(Remote, ClientErrorsAreNotRetriedAndBadBodiesAreFlagged) {
  FakeModelServer server;
  remote::RemoteNarrator narrator(server.config());
  try {
    narrator.narrate({0, 2, {"f"}, std::nullopt}, 2);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.code(), "rejected");
    EXPECT_EQ(e.attempts(), 1);
  }
  remote::RemoteVisionEncoder enc(server.config());
  const std::vector<VideoSegment> clips = {{0, 2, {"f"}, std::nullopt}};
  try {
    enc.encode(clips);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.code(), "bad_response");
  }
}

TEST(Remote, EmbedderChecksCount) {
  FakeModelServer server;
  remote::RemoteEmbedder e(server.config());
  const std::vector<std::string> texts = {"a", "b"};
  EXPECT_EQ(e.embed(texts).size(), 2u);
}

TEST(Remote, UnreachableEndpointIsUnavailable) {
  remote::RemoteConfig c;
  c.endpoint = "http://127.0.0.1:1";
  c.max_attempts = 2;
  c.backoff = std::chrono::milliseconds(1);
  c.timeout = std::chrono::milliseconds(500);
  remote::RemoteLanguageModel llm(c);
  EXPECT_THROW(llm.complete({"x", 4, std::nullopt}), ProviderError);
}

}  // namespace
}  // namespace vidassist
