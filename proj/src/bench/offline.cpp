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

#include "vidassist/bench/offline.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>

#include <omp.h>

#include "vidassist/core/errors.hpp"
#include "vidassist/metrics/batch.hpp"
#include "vidassist/session/matching.hpp"

namespace vidassist::bench {

namespace {

std::string step_text(const AnnotatedStep& s) {
  return s.narration ? *s.narration : "A person " + s.label.verb + " " + s.label.noun;
}

bool has_narrations(const BenchmarkSample& s) { return !s.history.narrations.empty(); }

struct Evaluated {
  SampleLog log;
  std::string prompt;
};

// Predicts every evaluable sample in parallel, then logs and folds in
// sample_id order so the result does not depend on scheduling.
template <typename Score>
metrics::MetricReport run(const std::vector<BenchmarkSample>& samples, const Predictor& predictor,
                          int z, const char* task, const RunOptions& opts,
                          std::vector<SampleLog>* logs_out, Score score) {
  if (samples.empty()) throw_argument(std::string(task) + ": empty dataset");
  if (z <= 0) throw_argument("horizon must be positive");

  std::vector<const BenchmarkSample*> todo;
  int skipped = 0;
  for (const auto& s : samples) {
    if (has_narrations(s)) {
      todo.push_back(&s);
    } else {
      ++skipped;
    }
  }
  std::sort(todo.begin(), todo.end(),
            [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });

  const long n = static_cast<long>(todo.size());
  std::vector<Evaluated> out(todo.size());
  std::vector<std::exception_ptr> errors(todo.size());
  const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      const BenchmarkSample& s = *todo[i];
      Prediction p = predictor.predict(s.history, z);
      Evaluated& e = out[i];
      e.log.sample_id = s.sample_id;
      e.log.raw_sentences = p.raw_sentences;
      e.log.predicted = p.mapped ? p.mapped->fitted(z) : ActionSequence{}.fitted(z);
      e.log.gt = s.gt_future;
      e.log.parse_failed = p.parse_failed;
      e.log.metrics = score(e.log.predicted, e.log.gt);
      e.prompt = std::move(p.prompt.text);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<metrics::SampleMetrics> per_sample;
  per_sample.reserve(out.size());
  for (const auto& e : out) per_sample.push_back({e.log.sample_id, e.log.metrics});
  if (per_sample.empty())
    throw Error(ErrorKind::data, "no_evaluable_samples",
                std::string(task) + ": every sample lacks narrations");
  metrics::MetricReport report = metrics::aggregate(std::move(per_sample), task, z);
  report.skipped = skipped;
  int failed = 0;
  for (const auto& e : out) failed += e.log.parse_failed;
  if (failed > 0) report.flags.push_back("parse_failed:" + std::to_string(failed));

  if (opts.log_dir) {
    std::string jsonl;
    for (const auto& e : out) jsonl += sample_log_to_json(e.log).dump() + "\n";
    write_text_file(*opts.log_dir / "predictions.jsonl", jsonl);
    for (const auto& e : out)
      write_text_file(*opts.log_dir / "prompts" / (e.log.sample_id + ".txt"), e.prompt);
  }
  if (logs_out) {
    logs_out->clear();
    for (auto& e : out) logs_out->push_back(std::move(e.log));
  }
  return report;
}

}  // namespace

std::vector<VpaVideo> load_vpa_videos(const std::filesystem::path& path, const Vocabulary& vocab) {
  std::vector<VpaVideo> videos;
  for (const auto& [line, j] : parse_jsonl(read_text_file(path), path.string())) {
    const std::string where = path.string() + ":" + std::to_string(line);
    VpaVideo v;
    v.video_id = json_field::string(j, "video_id", where);
    v.goal = json_field::string(j, "goal", where);
    const Json& steps = json_field::require(j, "steps", where);
    if (!steps.is_array()) throw_schema(where + ": 'steps' must be an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string at = where + ".steps[" + std::to_string(i) + "]";
      AnnotatedStep s;
      s.label = action_from_json(json_field::require(steps[i], "action", at), vocab, at);
      s.start_s = json_field::number(steps[i], "start", at);
      s.end_s = json_field::number(steps[i], "end", at);
      if (s.end_s < s.start_s) throw_schema(at + ": end precedes start");
      if (steps[i].contains("narration")) s.narration = json_field::string(steps[i], "narration", at);
      v.steps.push_back(std::move(s));
    }
    videos.push_back(std::move(v));
  }
  return videos;
}

void save_vpa_videos(const std::vector<VpaVideo>& videos, const std::filesystem::path& path) {
  std::string out;
  for (const auto& v : videos) {
    Json steps = Json::array();
    for (const auto& s : v.steps) {
      Json j = {{"action", action_to_json(s.label)}, {"start", s.start_s}, {"end", s.end_s}};
      if (s.narration) j["narration"] = *s.narration;
      steps.push_back(j);
    }
    out += Json{{"video_id", v.video_id}, {"goal", v.goal}, {"steps", steps}}.dump() + "\n";
  }
  write_text_file(path, out);
}

std::vector<BenchmarkSample> expand_vpa_video(const VpaVideo& video, int z) {
  if (z <= 0) throw_argument("horizon must be positive");
  std::vector<BenchmarkSample> out;
  const int k = static_cast<int>(video.steps.size());
  for (int j = 1; j + z <= k; ++j) {
    BenchmarkSample s;
    char id[32];
    std::snprintf(id, sizeof id, "-j%02d", j);
    s.sample_id = video.video_id + id;
    s.task = Task::vpa;
    s.history.goal = video.goal;
    for (int i = 0; i < j; ++i) {
      const auto& st = video.steps[i];
      s.history.narrations.push_back(
          {step_text(st), st.start_s, st.end_s, NarrationSource::ground_truth, std::nullopt});
      s.history.segments.push_back({st.start_s, st.end_s, {}, st.label});
    }
    for (int i = j; i < j + z; ++i) s.gt_future.labels.push_back(video.steps[i].label);
    s.gt_future.horizon = z;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BenchmarkSample> expand_vpa_videos(const std::vector<VpaVideo>& videos, int z) {
  std::vector<BenchmarkSample> out;
  for (const auto& v : videos) {
    auto part = expand_vpa_video(v, z);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

Json sample_log_to_json(const SampleLog& log) {
  Json m = Json::object();
  for (const auto& [k, v] : log.metrics) m[k] = v;
  return {{"sample_id", log.sample_id},
          {"raw", log.raw_sentences},
          {"predicted", sequence_to_json(log.predicted)},
          {"gt", sequence_to_json(log.gt)},
          {"parse_failed", log.parse_failed},
          {"metrics", m}};
}

metrics::MetricReport run_lta(const std::vector<BenchmarkSample>& samples,
                              const Predictor& predictor, int z, const RunOptions& opts,
                              std::vector<SampleLog>* logs) {
  return run(samples, predictor, z, "lta", opts, logs,
             [z](const ActionSequence& pred, const ActionSequence& gt) {
               const metrics::PairScores s = metrics::score_pair(pred, gt, z);
               return std::map<std::string, double>{{metrics::kEdVerb, s.ed_verb},
                                                    {metrics::kEdNoun, s.ed_noun},
                                                    {metrics::kEdAction, s.ed_action}};
             });
}

metrics::MetricReport run_vpa(const std::vector<BenchmarkSample>& samples,
                              const Predictor& predictor, int z, const RunOptions& opts,
                              std::vector<SampleLog>* logs) {
  return run(samples, predictor, z, "vpa", opts, logs,
             [z](const ActionSequence& pred, const ActionSequence& gt) {
               const metrics::PairScores s = metrics::score_pair(pred, gt, z);
               if (z == 1) return std::map<std::string, double>{{metrics::kMacc, s.macc}};
               return std::map<std::string, double>{{metrics::kSr, static_cast<double>(s.sr)},
                                                    {metrics::kMacc, s.macc},
                                                    {metrics::kMiou, s.miou}};
             });
}

metrics::MetricReport offline_rerun(const std::vector<SessionReport>& reports,
                                    const ScriptLibrary& scripts, const ResourceFactory& factory,
                                    const RunOptions& opts) {
  if (reports.empty()) throw_argument("rerun: no sessions");
  std::vector<metrics::SampleMetrics> per_sample;
  std::string jsonl;
  int skipped = 0;
  int z_max = 0;
  for (const auto& r : reports) {
    if (r.partial_progress.empty()) {
      ++skipped;
      continue;
    }
    const ActivityScript& script = scripts.get(r.script_id);
    const PredictorKind kind = predictor_kind_from_string(r.method);
    SessionResources res = factory(script, kind);
    if (!res.cache) res.cache = std::make_shared<EmbeddingCache>(res.providers.embedder);
    PredictorConfig cfg = SessionConfig::online_predictor(kind);
    cfg.z = script.n_eval() + 2;
    z_max = std::max(z_max, cfg.z);
    Predictor predictor(cfg, res.providers, res.pool, res.cache);

    VisualHistory h;
    h.narrations = r.partial_progress;
    h.goal = r.goal;
    const Prediction p = predictor.predict(h);
    const StepIou iou = step_set_iou(p.raw_sentences, script, *res.cache);
    per_sample.push_back({r.session_id, {{metrics::kMiou, iou.value}}});
    if (opts.log_dir) {
      jsonl += Json{{"sample_id", r.session_id},
                    {"script_id", r.script_id},
                    {"method", r.method},
                    {"raw", p.raw_sentences},
                    {"matched_steps", iou.matched_steps},
                    {"unmatched", iou.unmatched_texts},
                    {"metrics", {{metrics::kMiou, iou.value}}}}
                   .dump() +
               "\n";
      write_text_file(*opts.log_dir / "prompts" / (r.session_id + ".txt"), p.prompt.text);
    }
  }
  if (per_sample.empty())
    throw Error(ErrorKind::data, "no_evaluable_samples",
                "rerun: no session carries partial-progress narrations");
  if (opts.log_dir) write_text_file(*opts.log_dir / "predictions.jsonl", jsonl);
  metrics::MetricReport report = metrics::aggregate(std::move(per_sample), "rerun", z_max);
  report.skipped = skipped;
  return report;
}

metrics::MetricReport online_report(const std::vector<SessionReport>& reports) {
  if (reports.empty()) throw_argument("online report: no sessions");
  std::vector<metrics::SampleMetrics> per_sample;
  for (const auto& r : reports) per_sample.push_back({r.session_id, {{metrics::kMiou, r.online_miou}}});
  return metrics::aggregate(std::move(per_sample), "online", 1);
}

void write_report(const metrics::MetricReport& report, const std::filesystem::path& dir,
                  const std::string& label) {
  write_text_file(dir / "report.json", metrics::report_to_json(report).dump(2) + "\n");
  write_text_file(dir / "table.txt", metrics::format_table({report}, {label}));
}

}  // namespace vidassist::bench
