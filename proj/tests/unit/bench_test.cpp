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

#include <random>

#include "test_support.hpp"
#include "vidassist/bench/jobs.hpp"
#include "vidassist/bench/offline.hpp"
#include "vidassist/bench/synth.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/metrics/batch.hpp"
#include "vidassist/metrics/metrics.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/session/resources.hpp"

namespace vidassist {
namespace {

using testing_support::data_dir;
using testing_support::mini_vocab;

Predictor make_predictor(const PredictorConfig& cfg, std::shared_ptr<LanguageModel> llm,
                         std::shared_ptr<const ExamplePool> pool = nullptr) {
  Providers p;
  p.llm = std::move(llm);
  p.embedder = std::make_shared<stubs::BagOfWordsEmbedder>();
  p.vision = std::make_shared<stubs::StubVisionEncoder>();
  return Predictor(cfg, p, std::move(pool), nullptr, mini_vocab());
}

// Independent action-stream Levenshtein; NO_ACTION matches nothing.
double plain_ed(const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const bool eq = a[i - 1].first >= 0 && a[i - 1] == b[j - 1];
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (eq ? 0 : 1)});
    }
  return static_cast<double>(d[n][m]) / static_cast<double>(m);
}

TEST(Expansion, SevenStepsAtHorizonThreeGiveFourSamples) {
  const auto videos = bench::synth_vpa_videos(mini_vocab(), 1, 7, 5);
  const auto samples = bench::expand_vpa_video(videos[0], 3);
  ASSERT_EQ(samples.size(), 4u);
  for (int j = 1; j <= 4; ++j) {
    const auto& s = samples[j - 1];
    EXPECT_EQ(s.history.narrations.size(), static_cast<std::size_t>(j));
    ASSERT_EQ(s.gt_future.size(), 3u);
    for (int t = 0; t < 3; ++t) EXPECT_EQ(s.gt_future.labels[t], videos[0].steps[j + t].label);
    EXPECT_EQ(s.history.goal, videos[0].goal);
    EXPECT_EQ(s.task, Task::vpa);
  }
  EXPECT_EQ(samples[0].sample_id, videos[0].video_id + "-j01");
  EXPECT_TRUE(bench::expand_vpa_video(videos[0], 7).empty());
  EXPECT_THROW(bench::expand_vpa_video(videos[0], 0), Error);
}

TEST(Expansion, VideosRoundTripThroughJsonl) {
  testing_support::TempDir dir;
  const auto videos = bench::synth_vpa_videos(mini_vocab(), 3, 5, 9);
  bench::save_vpa_videos(videos, dir.path() / "v.jsonl");
  const auto back = bench::load_vpa_videos(dir.path() / "v.jsonl", mini_vocab());
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(bench::expand_vpa_videos(back, 2), bench::expand_vpa_videos(videos, 2));
}

TEST(Synth, DeterministicPerSeed) {
  const auto a = bench::synth_lta(mini_vocab(), 5, 4, 1);
  EXPECT_EQ(a, bench::synth_lta(mini_vocab(), 5, 4, 1));
  EXPECT_NE(a, bench::synth_lta(mini_vocab(), 5, 4, 2));
  for (const auto& s : a) {
    EXPECT_EQ(s.history.narrations.size(), 8u);
    EXPECT_EQ(s.gt_future.size(), 4u);
  }
}

TEST(Cheating, LtaReachesZeroEditDistance) {
  const auto samples = bench::synth_lta(mini_vocab(), 30, 6, 3);
  const auto cfg = PredictorConfig::socratic(Task::lta, 6);
  auto llm = stubs::FixtureLlm::from_json(bench::cheating_fixture(samples, cfg));
  const auto r = bench::run_lta(samples, make_predictor(cfg, llm), 6);
  EXPECT_DOUBLE_EQ(r.aggregates.at("ed_action"), 0.0);
  EXPECT_DOUBLE_EQ(r.aggregates.at("ed_verb"), 0.0);
  EXPECT_DOUBLE_EQ(r.aggregates.at("ed_noun"), 0.0);
  EXPECT_EQ(r.evaluated, 30);
}

TEST(Cheating, VpaReachesFullScores) {
  const auto samples = bench::expand_vpa_videos(bench::synth_vpa_videos(mini_vocab(), 4, 8, 6), 3);
  const auto cfg = PredictorConfig::socratic(Task::vpa, 3);
  auto llm = stubs::FixtureLlm::from_json(bench::cheating_fixture(samples, cfg));
  const auto r = bench::run_vpa(samples, make_predictor(cfg, llm), 3);
  EXPECT_DOUBLE_EQ(r.aggregates.at("sr"), 1.0);
  EXPECT_DOUBLE_EQ(r.aggregates.at("macc"), 1.0);
  EXPECT_DOUBLE_EQ(r.aggregates.at("miou"), 1.0);
}

TEST(RandomBaseline, MatchesMonteCarloExpectation) {
  const auto vocab = mini_vocab();
  const int z = 5;
  const auto samples = bench::synth_lta(vocab, 200, z, 21);
  auto llm = std::make_shared<stubs::RandomActionLlm>(vocab, 77);
  const auto r = bench::run_lta(samples, make_predictor(PredictorConfig::socratic(Task::lta, z), llm), z);

  // Expected ED when each prediction is a uniform draw from the feasible set.
  std::mt19937_64 rng(1234);
  const auto& actions = vocab.actions();
  double total = 0;
  const int draws = 300;
  for (const auto& s : samples) {
    std::vector<std::pair<int, int>> gt;
    for (const auto& l : s.gt_future.labels) gt.push_back({l.verb_index, l.noun_index});
    for (int d = 0; d < draws; ++d) {
      std::vector<std::pair<int, int>> pred;
      for (int t = 0; t < z; ++t) pred.push_back(actions[rng() % actions.size()]);
      total += plain_ed(pred, gt);
    }
  }
  const double expected = total / (samples.size() * draws);
  EXPECT_NEAR(r.aggregates.at("ed_action"), expected, 0.02);
  EXPECT_GT(r.aggregates.at("ed_action"), 0.5);
}

TEST(Logs, MetricsRecomputeFromLoggedSequences) {
  testing_support::TempDir dir;
  const auto vocab = mini_vocab();
  const auto samples = bench::synth_lta(vocab, 12, 4, 8);
  auto llm = std::make_shared<stubs::RandomActionLlm>(vocab, 3);
  std::vector<bench::SampleLog> logs;
  bench::RunOptions opts;
  opts.log_dir = dir.path();
  const auto r = bench::run_lta(samples, make_predictor(PredictorConfig::socratic(Task::lta, 4), llm), 4,
                                opts, &logs);
  ASSERT_EQ(logs.size(), 12u);
  double sum = 0;
  for (const auto& log : logs) {
    const auto s = metrics::score_pair(log.predicted, log.gt, 4);
    EXPECT_DOUBLE_EQ(log.metrics.at("ed_action"), s.ed_action);
    sum += s.ed_action;
  }
  EXPECT_NEAR(r.aggregates.at("ed_action"), sum / 12, 1e-12);
  const auto lines = parse_jsonl(read_text_file(dir.path() / "predictions.jsonl"), "p");
  EXPECT_EQ(lines.size(), 12u);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "prompts" / (logs[0].sample_id + ".txt")));
}

TEST(Runs, ParallelMatchesSerial) {
  const auto vocab = mini_vocab();
  const auto samples = bench::synth_lta(vocab, 40, 5, 13);
  auto llm = std::make_shared<stubs::RandomActionLlm>(vocab, 5);
  const auto p = make_predictor(PredictorConfig::socratic(Task::lta, 5), llm);
  bench::RunOptions one, four;
  one.workers = 1;
  four.workers = 4;
  EXPECT_EQ(metrics::report_to_json(bench::run_lta(samples, p, 5, one)).dump(),
            metrics::report_to_json(bench::run_lta(samples, p, 5, four)).dump());
}

TEST(Runs, HorizonOneReportsOnlyAccuracy) {
  const auto samples = bench::expand_vpa_videos(bench::synth_vpa_videos(mini_vocab(), 2, 4, 2), 1);
  auto cfg = PredictorConfig::socratic(Task::vpa, 1);
  auto llm = stubs::FixtureLlm::from_json(bench::cheating_fixture(samples, cfg));
  const auto r = bench::run_vpa(samples, make_predictor(cfg, llm), 1);
  EXPECT_EQ(r.aggregates.size(), 1u);
  EXPECT_DOUBLE_EQ(r.aggregates.at("macc"), 1.0);
}

TEST(Runs, SkipsEmptyHistoriesAndRejectsEmptyInput) {
  auto samples = bench::synth_lta(mini_vocab(), 3, 2, 4);
  samples[1].history.narrations.clear();
  auto llm = std::make_shared<stubs::RandomActionLlm>(mini_vocab(), 1);
  const auto p = make_predictor(PredictorConfig::socratic(Task::lta, 2), llm);
  const auto r = bench::run_lta(samples, p, 2);
  EXPECT_EQ(r.evaluated, 2);
  EXPECT_EQ(r.skipped, 1);
  EXPECT_THROW(bench::run_lta({}, p, 2), Error);
  for (auto& s : samples) s.history.narrations.clear();
  try {
    bench::run_lta(samples, p, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "no_evaluable_samples");
  }
}

TEST(Runs, ProseAnswersAreFlaggedAsParseFailures) {
  const auto samples = bench::synth_lta(mini_vocab(), 4, 3, 4);
  auto built = build_providers(Json{{"llm", {{"type", "prose"}}}}, ProviderContext{});
  // With a text history the prose lands after the cue and parses as one item.
  const auto with_text =
      bench::run_lta(samples, make_predictor(PredictorConfig::socratic(Task::lta, 3), built.llm), 3);
  for (const auto& f : with_text.flags) EXPECT_EQ(f.rfind("parse_failed", 0), std::string::npos);
  auto cfg = PredictorConfig::vclm(Task::lta, 3);
  cfg.use_text_history = false;
  const auto r = bench::run_lta(samples, make_predictor(cfg, built.llm), 3);
  EXPECT_NE(std::find(r.flags.begin(), r.flags.end(), "parse_failed:4"), r.flags.end());
  EXPECT_DOUBLE_EQ(r.aggregates.at("ed_action"), 1.0);
}

TEST(Rerun, OracleReplanFromPartialProgressBeatsOnline) {
  const auto reports = read_session_reports(testing_support::fixture_dir() / "repeat_once");
  const auto scripts = ScriptLibrary::load_dir(data_dir() / "scripts");
  const auto factory = spec_resource_factory(
      oracle_provider_spec("perfect", data_dir() / "synonyms.json"), data_dir(),
      data_dir() / "online_pool.jsonl");
  const auto offline = bench::offline_rerun(reports, scripts, factory);
  const auto online = bench::online_report(reports);
  EXPECT_EQ(offline.task, "rerun");
  EXPECT_DOUBLE_EQ(offline.aggregates.at("miou"), 1.0);
  EXPECT_NEAR(online.aggregates.at("miou"), 0.725, 1e-9);
  EXPECT_EQ(offline.evaluated, 10);
}

TEST(Jobs, BundledCheatConfigsRunFromRelativePaths) {
  const auto dir = data_dir() / "mini";
  const auto lta = bench::run_bench(
      bench::bench_request_from_json("lta", parse_json_text(read_text_file(dir / "bench_lta_cheat.json"), "c"), dir));
  EXPECT_DOUBLE_EQ(lta.aggregates.at("ed_action"), 0.0);
  const auto vpa = bench::run_bench(
      bench::bench_request_from_json("vpa", parse_json_text(read_text_file(dir / "bench_vpa_cheat.json"), "c"), dir));
  EXPECT_DOUBLE_EQ(vpa.aggregates.at("sr"), 1.0);
  EXPECT_THROW(bench::bench_request_from_json("xyz", Json::object(), dir), Error);
}

}  // namespace
}  // namespace vidassist
