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

#include "vidassist/session/analysis.hpp"

#include <cstdio>

#include "vidassist/metrics/report.hpp"

namespace vidassist {

namespace {

void add(SkipBreakdown& into, const SkipBreakdown& b) {
  into.redundant += b.redundant;
  into.infeasible += b.infeasible;
  into.irrelevant += b.irrelevant;
}

std::string row(const std::string& method, const std::string& task, const SkipBreakdown& b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %-10s %10d %10d %10d\n", method.c_str(), task.c_str(),
                b.redundant, b.infeasible, b.irrelevant);
  return buf;
}

}  // namespace

double SkipTable::redundant_share() const {
  return total.total() == 0 ? 0.0 : static_cast<double>(total.redundant) / total.total();
}

SkipTable analyze_skips(const std::vector<SessionReport>& reports) {
  SkipTable t;
  for (const auto& r : reports) {
    const SkipBreakdown b = count_skips(r.suggestions);
    add(t.rows[{r.method, r.script_id}], b);
    add(t.method_totals[r.method], b);
    add(t.total, b);
  }
  return t;
}

std::string format_skip_table(const SkipTable& table) {
  std::string out;
  char head[128];
  std::snprintf(head, sizeof head, "%-10s %-10s %10s %10s %10s\n", "Method", "Task", "Redundant",
                "Infeasible", "Irrelevant");
  out += head;
  for (const auto& [method, totals] : table.method_totals) {
    for (const auto& [key, b] : table.rows)
      if (key.first == method) out += row(method, key.second, b);
    out += row(method, "Total", totals);
  }
  char share[96];
  std::snprintf(share, sizeof share, "redundant share: %d/%d = %s%%\n", table.total.redundant,
                table.total.total(), metrics::format_percent(table.redundant_share()).c_str());
  out += share;
  return out;
}

Json skip_table_to_json(const SkipTable& table) {
  auto counts = [](const SkipBreakdown& b) {
    return Json{{"redundant", b.redundant}, {"infeasible", b.infeasible},
                {"irrelevant", b.irrelevant}};
  };
  Json rows = Json::array();
  for (const auto& [key, b] : table.rows) {
    Json r = {{"method", key.first}, {"task", key.second}};
    r.update(counts(b));
    rows.push_back(r);
  }
  Json totals = Json::object();
  for (const auto& [m, b] : table.method_totals) totals[m] = counts(b);
  return {{"rows", rows},
          {"method_totals", totals},
          {"total", counts(table.total)},
          {"redundant_share", table.redundant_share()}};
}

std::string format_comparison(const std::vector<MethodComparison>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-10s %8s %12s %14s %15s\n", "Method", "Sessions", "Success(%)",
                "Online mIoU(%)", "Offline mIoU(%)");
  out += buf;
  for (const auto& r : rows) {
    const std::string off = r.offline_miou ? metrics::format_percent(*r.offline_miou) : "-";
    std::snprintf(buf, sizeof buf, "%-10s %8d %12s %14s %15s\n", r.method.c_str(), r.sessions,
                  metrics::format_percent(r.success_rate).c_str(),
                  metrics::format_percent(r.online_miou).c_str(), off.c_str());
    out += buf;
  }
  return out;
}

}  // namespace vidassist
