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

// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../unit/scripted_llm.hpp"
#include "../unit/test_support.hpp"
#include "vidassist/bench/jobs.hpp"
#include "vidassist/bench/offline.hpp"
#include "vidassist/bench/synth.hpp"
#include "vidassist/core/errors.hpp"
#include "vidassist/metrics/batch.hpp"
#include "vidassist/metrics/metrics.hpp"
#include "vidassist/prompting/goldens.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/service/client.hpp"
#include "vidassist/service/server.hpp"
#include "vidassist/session/analysis.hpp"
#include "vidassist/session/resources.hpp"
#include "vidassist/session/simulate.hpp"

namespace va = vidassist;
namespace ts = vidassist::testing_support;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  double time_limit_s;  // 0: none
  std::function<Outcome()> run;
};

// --- independent metric oracles ---------------------------------------------

using Pair = std::pair<int, int>;  // (-1, -1) is NO_ACTION

std::vector<Pair> padded(const va::ActionSequence& s, int z) {
  std::vector<Pair> out;
  for (int t = 0; t < z; ++t) {
    if (t < static_cast<int>(s.size()) && !s.labels[t].is_no_action())
      out.push_back({s.labels[t].verb_index, s.labels[t].noun_index});
    else
      out.push_back({-1, -1});
  }
  return out;
}

// Iterative DP; `key` projects a label onto the compared stream.
double dp_ed(const std::vector<Pair>& a, const std::vector<Pair>& b,
             const std::function<int(const Pair&)>& key) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const bool eq = a[i - 1].first >= 0 && b[j - 1].first >= 0 && key(a[i - 1]) == key(b[j - 1]);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (eq ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(m);
}

va::ActionSequence random_seq(std::mt19937_64& rng, int min_len, int max_len) {
  va::ActionSequence s;
  const int len = min_len + static_cast<int>(rng() % (max_len - min_len + 1));
  for (int i = 0; i < len; ++i) {
    if (rng() % 9 == 0) {
      s.labels.push_back(va::ActionLabel::no_action());
    } else {
      va::ActionLabel l;
      l.verb_index = static_cast<int>(rng() % 3);
      l.noun_index = static_cast<int>(rng() % 3);
      s.labels.push_back(l);
    }
  }
  return s;
}

Outcome metric_oracles() {
  std::mt19937_64 rng(20240601);
  const int cases = 5000;
  int disagreements = 0;
  const auto verb = [](const Pair& p) { return p.first; };
  const auto noun = [](const Pair& p) { return p.second; };
  const auto action = [](const Pair& p) { return p.first * 1000 + p.second; };
  for (int i = 0; i < cases; ++i) {
    const int z = 1 + static_cast<int>(rng() % 6);
    const auto p = random_seq(rng, 0, 8), g = random_seq(rng, 1, 8);
    const auto a = padded(p, z), b = padded(g, z);
    int hits = 0;
    bool exact = true;
    for (int t = 0; t < z; ++t) {
      const bool eq = a[t].first >= 0 && a[t] == b[t];
      hits += eq;
      exact = exact && eq;
    }
    std::set<Pair> sp, sg, su;
    for (const auto& l : p.labels)
      if (!l.is_no_action()) sp.insert({l.verb_index, l.noun_index});
    for (const auto& l : g.labels)
      if (!l.is_no_action()) sg.insert({l.verb_index, l.noun_index});
    su = sp;
    su.insert(sg.begin(), sg.end());
    int inter = 0;
    for (const auto& x : sp) inter += static_cast<int>(sg.count(x));
    const double iou = su.empty() ? 0.0 : static_cast<double>(inter) / su.size();

    const bool ok =
        va::metrics::edit_distance(p, g, z, va::metrics::Stream::verb) == dp_ed(a, b, verb) &&
        va::metrics::edit_distance(p, g, z, va::metrics::Stream::noun) == dp_ed(a, b, noun) &&
        va::metrics::edit_distance(p, g, z, va::metrics::Stream::action) == dp_ed(a, b, action) &&
        va::metrics::mean_accuracy(p, g, z) == static_cast<double>(hits) / z &&
        va::metrics::miou(p, g) == iou && va::metrics::success_rate(p, g, z) == (exact ? 1 : 0);
    disagreements += !ok;
  }
  return {disagreements == 0,
          std::to_string(cases) + " cases, " + std::to_string(disagreements) + " disagreements"};
}

Outcome metric_ordering() {
  std::mt19937_64 rng(77);
  int violations = 0, sr_hits = 0;
  for (int i = 0; i < 5000; ++i) {
    const int z = 1 + static_cast<int>(rng() % 5);
    const auto g = random_seq(rng, 1, 5);
    const auto p = rng() % 2 ? g : random_seq(rng, 0, 5);
    const auto s = va::metrics::score_pair(p, g, z);
    if (s.sr == 1) ++sr_hits;
    if (s.sr == 1 && s.macc != 1.0) ++violations;
    if (s.macc == 1.0 && s.ed_action != 0.0) ++violations;
  }
  va::ActionSequence fwd, rev;
  for (int k = 0; k < 3; ++k) {
    va::ActionLabel l;
    l.verb_index = k;
    l.noun_index = k;
    fwd.labels.push_back(l);
  }
  rev.labels.assign(fwd.labels.rbegin(), fwd.labels.rend());
  const bool witness = va::metrics::miou(rev, fwd) == 1.0 && va::metrics::success_rate(rev, fwd, 3) == 0;
  return {violations == 0 && witness && sr_hits > 0,
          std::to_string(violations) + " violations over 5000 pairs; order witness " +
              (witness ? "found" : "missing")};
}

Outcome prompt_goldens() {
  int bad = 0;
  std::string first;
  const auto results = va::goldens::check(ts::source_dir() / "goldens");
  for (const auto& r : results) {
    if (!r.ok) {
      ++bad;
      if (first.empty()) first = r.file + ": " + r.detail;
    }
  }
  return {bad == 0 && results.size() == 6,
          std::to_string(results.size() - bad) + "/" + std::to_string(results.size()) +
              " byte-identical" + (first.empty() ? "" : "; " + first)};
}

Outcome budget_law() {
  std::mt19937_64 rng(4242);
  auto cache = ts::bow_cache();
  const auto words = std::make_shared<va::WordTokenizer>();
  int violations = 0, strictly_fewer = 0;
  const auto vocab = ts::mini_vocab();
  const auto word = [&](std::size_t i) {
    static const char* bank[] = {"take", "put", "cut", "wash", "open", "pour", "cup", "knife",
                                 "tomato", "bread", "pan", "milk", "slowly", "then"};
    return std::string(bank[i % 14]);
  };
  for (int set = 0; set < 100; ++set) {
    std::vector<va::PromptExample> examples;
    const int n = 4 + static_cast<int>(rng() % 12);
    for (int e = 0; e < n; ++e) {
      va::PromptExample ex;
      ex.example_id = "e" + std::to_string(e);
      const int lines = 5 + static_cast<int>(rng() % 60);
      for (int l = 0; l < lines; ++l)
        ex.narrations.push_back("A person " + word(rng()) + " the " + word(rng()));
      examples.push_back(std::move(ex));
    }
    auto pool = std::make_shared<va::ExamplePool>(std::move(examples), *cache);
    va::VisualHistory h;
    const int hist = 1 + static_cast<int>(rng() % 120);
    for (int l = 0; l < hist; ++l)
      h.narrations.push_back(ts::narration("A person " + word(rng()) + " the " + word(rng()), l, l + 1));

    std::size_t kept[2] = {0, 0};
    int k = 0;
    for (auto cfg : {va::PredictorConfig::socratic(va::Task::lta, 20),
                     va::PredictorConfig::vclm(va::Task::lta, 20)}) {
      cfg.examples = 16;
      va::Providers p;
      p.llm = std::make_shared<ts::ScriptedLlm>(std::vector<std::string>{" take cup"}, 2048, words);
      p.embedder = std::make_shared<va::stubs::BagOfWordsEmbedder>();
      p.vision = std::make_shared<va::stubs::StubVisionEncoder>();
      const auto pred = va::Predictor(cfg, p, pool, cache, vocab).predict(h);
      if (pred.prompt.token_count + pred.prompt.reserved_vision_tokens > 2048) ++violations;
      kept[k++] = pred.prompt.examples_used.size();
    }
    if (kept[1] > kept[0]) ++violations;
    if (kept[1] < kept[0]) ++strictly_fewer;
  }
  return {violations == 0 && strictly_fewer > 0,
          "100 prompt sets, " + std::to_string(violations) + " violations, vclm kept fewer in " +
              std::to_string(strictly_fewer)};
}

va::metrics::MetricReport bundled_bench(const std::string& kind, const std::string& file) {
  const auto dir = ts::data_dir() / "mini";
  return va::bench::run_bench(va::bench::bench_request_from_json(
      kind, va::parse_json_text(va::read_text_file(dir / file), file), dir));
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Outcome text_history_ablation() {
  const auto r = bundled_bench("lta", "bench_lta_no_text.json");
  const double v = r.aggregates.at("ed_verb"), n = r.aggregates.at("ed_noun"),
               a = r.aggregates.at("ed_action");
  return {v == 1.0 && n == 1.0 && a == 1.0 && r.evaluated == 20,
          "ED " + fixed3(v) + "/" + fixed3(n) + "/" + fixed3(a) + " over " +
              std::to_string(r.evaluated) + " samples"};
}

Outcome cheating_bounds() {
  const auto lta = bundled_bench("lta", "bench_lta_cheat.json");
  const auto vpa = bundled_bench("vpa", "bench_vpa_cheat.json");
  const double ed = lta.aggregates.at("ed_action");
  const double sr = vpa.aggregates.at("sr"), macc = vpa.aggregates.at("macc"),
               miou = vpa.aggregates.at("miou");
  return {ed == 0.0 && lta.aggregates.at("ed_verb") == 0.0 && lta.aggregates.at("ed_noun") == 0.0 &&
              sr == 1.0 && macc == 1.0 && miou == 1.0 && lta.evaluated == 20 && vpa.evaluated == 20,
          "LTA ED " + fixed3(ed) + " (" + std::to_string(lta.evaluated) + "); VPA SR/mAcc/mIoU " +
              va::metrics::format_percent(sr) + "/" + va::metrics::format_percent(macc) + "/" +
              va::metrics::format_percent(miou) + " (" + std::to_string(vpa.evaluated) + ")"};
}

Outcome sample_expansion() {
  const auto video = va::bench::synth_vpa_videos(ts::mini_vocab(), 1, 7, 99).front();
  const auto samples = va::bench::expand_vpa_video(video, 3);
  return {samples.size() == 4, "K=7, Z=3 -> " + std::to_string(samples.size()) + " samples"};
}

va::SessionManager oracle_manager(const std::string& mode) {
  return va::SessionManager(
      va::ScriptLibrary::load_dir(ts::data_dir() / "scripts"),
      va::spec_resource_factory(va::oracle_provider_spec(mode, ts::data_dir() / "synonyms.json"),
                                ts::data_dir(), ts::data_dir() / "online_pool.jsonl"));
}

Outcome closed_loop() {
  auto cache = ts::synonym_cache();
  int perfect_ok = 0, stuck_ok = 0;
  for (const std::string id : {"latte", "caprese", "blt"}) {
    auto m = oracle_manager("perfect");
    va::InProcessDriver d(m);
    for (int trial = 0; trial < 5; ++trial) {
      const auto r = va::simulate_user(d, {std::nullopt, std::nullopt, id, va::PredictorKind::socratic},
                                       m.scripts().get(id), *cache);
      perfect_ok += r.success && r.end_reason == va::EndReason::done_step && r.online_miou == 1.0;
    }
    auto s = oracle_manager("stuck");
    va::InProcessDriver sd(s);
    const auto r = va::simulate_user(sd, {std::nullopt, std::nullopt, id, va::PredictorKind::socratic},
                                     s.scripts().get(id), *cache);
    int redundant = 0;
    for (const auto& rec : r.suggestions) redundant += rec.outcome == va::Outcome::skipped_redundant;
    stuck_ok += r.end_reason == va::EndReason::three_skips && r.suggestions.size() == 3 &&
                redundant == 3;
  }
  auto mis = oracle_manager("misordered");
  va::InProcessDriver md(mis);
  const auto r = va::simulate_user(md, {std::nullopt, std::nullopt, "latte", va::PredictorKind::socratic},
                                   mis.scripts().get("latte"), *cache);
  const int infeasible = r.skip_breakdown.infeasible;
  return {perfect_ok == 15 && stuck_ok == 3 && infeasible >= 1,
          "perfect " + std::to_string(perfect_ok) + "/15, stuck " + std::to_string(stuck_ok) +
              "/3 after 3 redundant skips, misordered latte infeasible=" + std::to_string(infeasible)};
}

va::ActivityScript random_script(std::mt19937_64& rng, int id) {
  const int k = 2 + static_cast<int>(rng() % 9);
  std::vector<va::ScriptStep> steps;
  for (int i = 0; i < k; ++i) {
    va::ScriptStep s;
    s.step_id = "s" + std::to_string(i);
    s.description = "Step number " + std::to_string(i);
    s.optional = i + 1 < k && rng() % 5 == 0;
    steps.push_back(s);
  }
  std::vector<std::pair<std::string, std::string>> prec;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (rng() % 4 == 0) prec.push_back({steps[i].step_id, steps[j].step_id});
  const int boundary = 1 + static_cast<int>(rng() % (k - 1));
  return va::ActivityScript::make("r" + std::to_string(id), "Random", "do it", steps, prec, boundary);
}

Outcome protocol_termination() {
  std::mt19937_64 rng(10000);
  const va::Outcome outcomes[] = {va::Outcome::executed, va::Outcome::skipped_redundant,
                                  va::Outcome::skipped_infeasible, va::Outcome::skipped_irrelevant};
  int violations = 0, max_ratio_num = 0, max_ratio_den = 1;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto script = random_script(rng, trial);
    va::ProtocolState p(script.n_eval());
    int suggestions = 0;
    // Outcome mix varies per trial so long executed runs and skip runs both occur.
    const int exec_weight = 1 + static_cast<int>(rng() % 6);
    while (!p.end_reason()) {
      if (rng() % 12 == 0) {
        p.issue_system_error();
      } else {
        const int pick = static_cast<int>(rng() % (exec_weight + 3));
        const va::Outcome o = pick < exec_weight ? outcomes[0] : outcomes[1 + pick - exec_weight];
        p.resolve(p.issue(rng() % 40 == 0), o);
        ++suggestions;
      }
      if (!p.check_invariants().empty() || suggestions > p.suggestion_bound()) {
        ++violations;
        break;
      }
    }
    if (suggestions * max_ratio_den > max_ratio_num * p.suggestion_bound()) {
      max_ratio_num = suggestions;
      max_ratio_den = p.suggestion_bound();
    }
  }
  return {violations == 0, "10000 sequences, " + std::to_string(violations) +
                               " violations; longest used " + std::to_string(max_ratio_num) + "/" +
                               std::to_string(max_ratio_den) + " of its bound"};
}

Outcome skip_analytics() {
  const auto table = va::analyze_skips(va::read_session_reports(ts::fixture_dir() / "skip_table"));
  const auto v = table.method_totals.at("vclm"), s = table.method_totals.at("socratic");
  const bool rows = v == va::SkipBreakdown{32, 13, 4} && s == va::SkipBreakdown{33, 16, 7};
  const bool share = table.total.redundant == 65 && table.total.total() == 105;
  auto fmt = [](const va::SkipBreakdown& b) {
    return std::to_string(b.redundant) + "/" + std::to_string(b.infeasible) + "/" +
           std::to_string(b.irrelevant);
  };
  return {rows && share, "vclm " + fmt(v) + ", socratic " + fmt(s) + ", redundant " +
                             std::to_string(table.total.redundant) + "/" +
                             std::to_string(table.total.total()) + " = " +
                             va::metrics::format_percent(table.redundant_share()) + "%"};
}

Outcome offline_vs_online() {
  const auto reports = va::read_session_reports(ts::fixture_dir() / "repeat_once");
  const auto scripts = va::ScriptLibrary::load_dir(ts::data_dir() / "scripts");
  // The same repeat-once planner, asked once for the whole plan.
  const auto factory = va::spec_resource_factory(
      va::oracle_provider_spec("repeat_once", ts::data_dir() / "synonyms.json"), ts::data_dir(),
      ts::data_dir() / "online_pool.jsonl");
  const auto offline = va::bench::offline_rerun(reports, scripts, factory);
  const auto online = va::bench::online_report(reports);
  const double off = offline.aggregates.at("miou"), on = online.aggregates.at("miou");
  return {reports.size() == 10 && offline.evaluated == 10 && off > on,
          std::to_string(reports.size()) + " sessions: offline mIoU " + va::metrics::format_percent(off) +
              "% vs online " + va::metrics::format_percent(on) + "%"};
}

Outcome http_parity() {
  auto cache = ts::synonym_cache();
  int same = 0, total = 0;
  for (const std::string mode : {"perfect", "misordered", "stuck", "repeat_once", "irrelevant"}) {
    for (const std::string id : {"latte", "caprese", "blt"}) {
      for (auto method : {va::PredictorKind::socratic, va::PredictorKind::vclm}) {
        const va::StartRequest req{"parity-" + id, std::nullopt, id, method};
        auto local = oracle_manager(mode);
        va::InProcessDriver in(local);
        const auto a = va::simulate_user(in, req, local.scripts().get(id), *cache);

        auto remote_side = oracle_manager(mode);
        va::Service svc(remote_side, ts::data_dir());
        const int port = svc.start_background("127.0.0.1", 0);
        va::HttpDriver http("127.0.0.1", port);
        const auto b = va::simulate_user(http, req, remote_side.scripts().get(id), *cache);
        svc.stop();
        ++total;
        same += va::session_report_to_json(a).dump() == va::session_report_to_json(b).dump();
      }
    }
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) +
                             " scenarios byte-identical"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"metric_oracles", 10, metric_oracles},
      {"metric_ordering", 0, metric_ordering},
      {"prompt_goldens", 0, prompt_goldens},
      {"budget_law", 0, budget_law},
      {"text_history_ablation", 0, text_history_ablation},
      {"cheating_bounds", 30, cheating_bounds},
      {"sample_expansion", 0, sample_expansion},
      {"closed_loop", 20, closed_loop},
      {"protocol_termination", 0, protocol_termination},
      {"skip_analytics", 0, skip_analytics},
      {"offline_vs_online", 0, offline_vs_online},
      {"http_parity", 0, http_parity},
  };
  int passed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.time_limit_s)) + " s limit";
    }
    std::printf("%s %-22s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    passed += o.pass;
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
