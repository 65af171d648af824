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
#include <utility>
#include <vector>

#include "vidassist/session/session.hpp"

namespace vidassist {

/// Skip counts by (method, activity), recounted from suggestion outcomes.
struct SkipTable {
  std::map<std::pair<std::string, std::string>, SkipBreakdown> rows;
  std::map<std::string, SkipBreakdown> method_totals;
  SkipBreakdown total;

  /// Redundant skips over all skips; 0 when there are none.
  double redundant_share() const;
  bool empty() const noexcept { return rows.empty(); }
};

SkipTable analyze_skips(const std::vector<SessionReport>& reports);

/// Method / Task / Redundant / Infeasible / Irrelevant, a Total row per
/// method, and the overall redundant share.
std::string format_skip_table(const SkipTable& table);

Json skip_table_to_json(const SkipTable& table);

/// Per-method online mIoU and success next to the offline rerun mIoU.
struct MethodComparison {
  std::string method;
  int sessions = 0;
  double success_rate = 0.0;
  double online_miou = 0.0;
  std::optional<double> offline_miou;
};

std::string format_comparison(const std::vector<MethodComparison>& rows);

}  // namespace vidassist
