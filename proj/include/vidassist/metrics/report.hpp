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

#include <map>
#include <string>
#include <vector>

#include "vidassist/core/io.hpp"

namespace vidassist::metrics {

// Metric keys, in presentation order.
inline constexpr const char* kEdVerb = "ed_verb";
inline constexpr const char* kEdNoun = "ed_noun";
inline constexpr const char* kEdAction = "ed_action";
inline constexpr const char* kSr = "sr";
inline constexpr const char* kMacc = "macc";
inline constexpr const char* kMiou = "miou";

struct SampleMetrics {
  std::string sample_id;
  std::map<std::string, double> values;
};

struct MetricReport {
  std::string task;  // "lta", "vpa", "rerun", "online"
  int z = 0;
  std::vector<SampleMetrics> per_sample;  // sorted by sample_id
  std::map<std::string, double> aggregates;
  int evaluated = 0;
  int skipped = 0;
  std::vector<std::string> flags;
};

/// Arithmetic mean of each metric over the samples that define it.
/// Throws Error(argument) on an empty list.
MetricReport aggregate(std::vector<SampleMetrics> samples, std::string task, int z);

/// Fraction in [0,1] as a percentage with one decimal, e.g. 0.304 -> "30.4".
std::string format_percent(double fraction);

Json report_to_json(const MetricReport& report);
MetricReport report_from_json(const Json& j);

/// Fixed-width text table: edit distances as 3-decimal fractions, SR/mAcc/mIoU
/// as percentages, one row per report.
std::string format_table(const std::vector<MetricReport>& rows,
                         const std::vector<std::string>& row_labels);

}  // namespace vidassist::metrics
