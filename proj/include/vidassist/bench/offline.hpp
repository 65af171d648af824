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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vidassist/metrics/report.hpp"
#include "vidassist/pipelines/predictor.hpp"
#include "vidassist/session/manager.hpp"

namespace vidassist::bench {

/// One annotated step of a procedural video.
struct AnnotatedStep {
  ActionLabel label;
  double start_s = 0.0;
  double end_s = 0.0;
  std::optional<std::string> narration;  // "A person <verb> <noun>" when absent
};

/// A procedural video before expansion into planning samples.
struct VpaVideo {
  std::string video_id;
  std::string goal;
  std::vector<AnnotatedStep> steps;  // K steps in time order
};

/// JSONL: {"video_id", "goal", "steps": [{"action": [verb, noun], "start",
/// "end", "narration"?}]}.
std::vector<VpaVideo> load_vpa_videos(const std::filesystem::path& path, const Vocabulary& vocab);
void save_vpa_videos(const std::vector<VpaVideo>& videos, const std::filesystem::path& path);

/// K - Z samples per video: sample j (1-based) sees the first j steps and
/// must predict steps j+1 .. j+Z. Videos with K <= Z yield nothing.
std::vector<BenchmarkSample> expand_vpa_video(const VpaVideo& video, int z);
std::vector<BenchmarkSample> expand_vpa_videos(const std::vector<VpaVideo>& videos, int z);

struct RunOptions {
  int workers = 0;  // <= 0: OpenMP default
  /// When set, predictions.jsonl and prompts/<sample_id>.txt go here.
  std::optional<std::filesystem::path> log_dir;
};

/// Per-sample record as logged; metrics are recomputable from it alone.
struct SampleLog {
  std::string sample_id;
  std::vector<std::string> raw_sentences;
  ActionSequence predicted;
  ActionSequence gt;
  bool parse_failed = false;
  std::map<std::string, double> metrics;
};

Json sample_log_to_json(const SampleLog& log);

/// Edit distance over the verb, noun and action streams at horizon Z.
/// Samples without narrations are skipped and counted. Throws
/// Error(argument) on an empty dataset.
metrics::MetricReport run_lta(const std::vector<BenchmarkSample>& samples,
                              const Predictor& predictor, int z, const RunOptions& opts = {},
                              std::vector<SampleLog>* logs = nullptr);

/// mAcc for Z = 1; SR, mAcc and mIoU otherwise.
metrics::MetricReport run_vpa(const std::vector<BenchmarkSample>& samples,
                              const Predictor& predictor, int z, const RunOptions& opts = {},
                              std::vector<SampleLog>* logs = nullptr);

/// Single-shot n+2 step prediction from each session's partial-progress
/// narrations, scored against the script's evaluation steps with the same
/// step-set IoU as the online report. No session state is consulted.
metrics::MetricReport offline_rerun(const std::vector<SessionReport>& reports,
                                    const ScriptLibrary& scripts, const ResourceFactory& factory,
                                    const RunOptions& opts = {});

/// The online IoU of the same sessions in MetricReport form ("online").
metrics::MetricReport online_report(const std::vector<SessionReport>& reports);

/// Writes report.json and table.txt under `dir`.
void write_report(const metrics::MetricReport& report, const std::filesystem::path& dir,
                  const std::string& label);

}  // namespace vidassist::bench
