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

#include <filesystem>
#include <optional>
#include <string>

#include "vidassist/bench/offline.hpp"

namespace vidassist::bench {

/// Everything one benchmark run needs, as given by a config file, CLI
/// flags or an HTTP body. Relative paths resolve against `base_dir`.
struct BenchRequest {
  std::string kind;                  // "lta", "vpa" or "rerun"
  std::filesystem::path dataset;     // lta: samples JSONL; vpa: videos JSONL
  std::filesystem::path vocabulary;  // lta, vpa
  std::optional<std::filesystem::path> pool;
  std::filesystem::path sessions;    // rerun: directory of session reports
  std::filesystem::path scripts;     // rerun: directory of scripts
  std::optional<int> z;
  std::optional<bool> goal_conditioning;
  PredictorConfig predictor;
  Json providers = Json::object();
  std::filesystem::path base_dir;
  RunOptions run;
};

/// Reads {"dataset", "vocabulary", "pool"?, "sessions"?, "scripts"?, "z"?,
/// "goal_conditioning"?, "predictor"?, "providers"?, "workers"?}.
BenchRequest bench_request_from_json(const std::string& kind, const Json& j,
                                     const std::filesystem::path& base_dir);

/// Loads inputs, builds providers and runs the requested benchmark. Logs
/// and report files go to `run.log_dir` when set.
metrics::MetricReport run_bench(const BenchRequest& request);

}  // namespace vidassist::bench
