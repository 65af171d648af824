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

#include "vidassist/metrics/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vidassist/core/errors.hpp"

namespace vidassist::metrics {

namespace {

constexpr std::array<const char*, 6> kOrder{kEdVerb, kEdNoun, kEdAction, kSr, kMacc, kMiou};

bool is_edit_distance(const std::string& key) { return key.rfind("ed_", 0) == 0; }

const char* column_title(const std::string& key) {
  if (key == kEdVerb) return "Verb ED";
  if (key == kEdNoun) return "Noun ED";
  if (key == kEdAction) return "Action ED";
  if (key == kSr) return "SR";
  if (key == kMacc) return "mAcc";
  if (key == kMiou) return "mIoU";
  return "?";
}

}  // namespace

MetricReport aggregate(std::vector<SampleMetrics> samples, std::string task, int z) {
  if (samples.empty()) throw_argument("cannot aggregate an empty sample list");
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.sample_id < b.sample_id; });
  MetricReport report;
  report.task = std::move(task);
  report.z = z;
  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& s : samples) {
    for (const auto& [key, value] : s.values) {
      auto& [sum, count] = sums[key];
      sum += value;
      ++count;
    }
  }
  for (const auto& [key, sc] : sums) report.aggregates[key] = sc.first / sc.second;
  report.evaluated = static_cast<int>(samples.size());
  report.per_sample = std::move(samples);
  return report;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

Json report_to_json(const MetricReport& report) {
  Json j;
  j["task"] = report.task;
  j["z"] = report.z;
  Json agg = Json::object();
  for (const char* key : kOrder) {
    if (auto it = report.aggregates.find(key); it != report.aggregates.end()) agg[key] = it->second;
  }
  j["aggregates"] = std::move(agg);
  j["counts"] = {{"evaluated", report.evaluated}, {"skipped", report.skipped}};
  j["flags"] = report.flags;
  Json per = Json::array();
  for (const auto& s : report.per_sample) {
    Json row;
    row["sample_id"] = s.sample_id;
    for (const char* key : kOrder) {
      if (auto it = s.values.find(key); it != s.values.end()) row[key] = it->second;
    }
    per.push_back(std::move(row));
  }
  j["per_sample"] = std::move(per);
  return j;
}

MetricReport report_from_json(const Json& j) {
  MetricReport r;
  r.task = json_field::string(j, "task", "report");
  r.z = json_field::integer(j, "z", "report");
  for (const auto& [key, value] : json_field::require(j, "aggregates", "report").items()) {
    r.aggregates[key] = value.get<double>();
  }
  const Json& counts = json_field::require(j, "counts", "report");
  r.evaluated = json_field::integer(counts, "evaluated", "report.counts");
  r.skipped = json_field::integer(counts, "skipped", "report.counts");
  if (j.contains("flags")) r.flags = j["flags"].get<std::vector<std::string>>();
  for (const auto& row : json_field::require(j, "per_sample", "report")) {
    SampleMetrics s;
    s.sample_id = json_field::string(row, "sample_id", "report.per_sample");
    for (const auto& [key, value] : row.items()) {
      if (key != "sample_id") s.values[key] = value.get<double>();
    }
    r.per_sample.push_back(std::move(s));
  }
  return r;
}

std::string format_table(const std::vector<MetricReport>& rows,
                         const std::vector<std::string>& row_labels) {
  std::vector<std::string> columns;
  for (const char* key : kOrder) {
    for (const auto& r : rows) {
      if (r.aggregates.count(key)) {
        columns.emplace_back(key);
        break;
      }
    }
  }
  std::size_t label_width = 8;
  for (const auto& l : row_labels) label_width = std::max(label_width, l.size() + 2);

  std::ostringstream out;
  char cell[64];
  out << std::string(label_width, ' ').replace(0, 5, "Model");
  out << "   Z";
  for (const auto& c : columns) {
    std::snprintf(cell, sizeof cell, "%11s", column_title(c));
    out << cell;
  }
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string label = i < row_labels.size() ? row_labels[i] : rows[i].task;
    label.resize(label_width, ' ');
    out << label;
    std::snprintf(cell, sizeof cell, "%4d", rows[i].z);
    out << cell;
    for (const auto& c : columns) {
      auto it = rows[i].aggregates.find(c);
      if (it == rows[i].aggregates.end()) {
        std::snprintf(cell, sizeof cell, "%11s", "-");
      } else if (is_edit_distance(c)) {
        std::snprintf(cell, sizeof cell, "%11.3f", it->second);
      } else {
        std::snprintf(cell, sizeof cell, "%11s", format_percent(it->second).c_str());
      }
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace vidassist::metrics
