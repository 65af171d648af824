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

#include "vidassist/bench/jobs.hpp"

#include "vidassist/core/errors.hpp"
#include "vidassist/providers/registry.hpp"
#include "vidassist/session/resources.hpp"

namespace vidassist::bench {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_relative() && !base.empty() ? base / p : p;
}

std::filesystem::path path_field(const Json& j, const char* key, const std::filesystem::path& base,
                                 const std::string& where) {
  return resolve(base, json_field::string(j, key, where));
}

int default_z(const std::string& kind) { return kind == "lta" ? 20 : 3; }

}  // namespace

BenchRequest bench_request_from_json(const std::string& kind, const Json& j,
                                     const std::filesystem::path& base_dir) {
  if (kind != "lta" && kind != "vpa" && kind != "rerun")
    throw_argument("unknown benchmark '" + kind + "' (expected lta, vpa or rerun)");
  if (!j.is_object()) throw_schema("bench request: expected an object");
  const std::string where = "bench " + kind;
  BenchRequest r;
  r.kind = kind;
  r.base_dir = base_dir;
  if (kind == "rerun") {
    r.sessions = path_field(j, "sessions", base_dir, where);
    r.scripts = path_field(j, "scripts", base_dir, where);
  } else {
    r.dataset = path_field(j, "dataset", base_dir, where);
    r.vocabulary = path_field(j, "vocabulary", base_dir, where);
  }
  if (j.contains("pool")) r.pool = path_field(j, "pool", base_dir, where);
  if (j.contains("z")) r.z = json_field::integer(j, "z", where);
  if (j.contains("goal_conditioning"))
    r.goal_conditioning = json_field::boolean(j, "goal_conditioning", where);
  if (j.contains("predictor")) r.predictor = predictor_config_from_json(j["predictor"], where + ".predictor");
  if (j.contains("providers")) r.providers = j["providers"];
  if (j.contains("workers")) r.run.workers = json_field::integer(j, "workers", where);
  return r;
}

metrics::MetricReport run_bench(const BenchRequest& req) {
  metrics::MetricReport report;
  if (req.kind == "rerun") {
    const auto reports = read_session_reports(req.sessions);
    const ScriptLibrary scripts = ScriptLibrary::load_dir(req.scripts);
    report = offline_rerun(reports, scripts,
                           spec_resource_factory(req.providers, req.base_dir, req.pool), req.run);
  } else {
    const Task task = task_from_string(req.kind);
    const Vocabulary vocab = load_vocabulary(req.vocabulary);
    PredictorConfig cfg = req.predictor;
    cfg.task = task;
    cfg.z = req.z.value_or(default_z(req.kind));
    if (req.goal_conditioning) cfg.goal_conditioning = *req.goal_conditioning;
    cfg.validate();

    ProviderContext ctx;
    ctx.base_dir = req.base_dir;
    ctx.vocabulary = vocab;
    Providers providers = build_providers(req.providers, ctx);
    auto cache = std::make_shared<EmbeddingCache>(providers.embedder);
    std::shared_ptr<const ExamplePool> pool;
    if (req.pool) pool = std::make_shared<const ExamplePool>(load_example_pool(*req.pool), *cache);
    const Predictor predictor(cfg, providers, pool, cache, vocab);

    if (task == Task::lta) {
      report = run_lta(load_dataset(req.dataset, vocab), predictor, cfg.z, req.run);
    } else {
      const auto samples = expand_vpa_videos(load_vpa_videos(req.dataset, vocab), cfg.z);
      if (samples.empty())
        throw Error(ErrorKind::data, "no_evaluable_samples",
                    "vpa: no video has more than Z = " + std::to_string(cfg.z) + " steps");
      report = run_vpa(samples, predictor, cfg.z, req.run);
    }
  }
  if (req.run.log_dir) write_report(report, *req.run.log_dir, req.kind);
  return report;
}

}  // namespace vidassist::bench
