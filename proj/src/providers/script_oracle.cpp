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

#include "vidassist/providers/script_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "vidassist/core/errors.hpp"
#include "vidassist/prompting/prompt.hpp"

namespace vidassist::stubs {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string lower_first(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
  return s;
}

// Renders items as a continuation of a prompt ending in `cue` ("N."), or
// as a fresh numbered list when there is no cue.
std::string render(const std::vector<std::string>& items, std::optional<int> cue) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out << "\n";
    if (cue && i == 0) {
      out << " " << items[i];
    } else {
      out << (cue ? *cue : 1) + static_cast<int>(i) << ". " << items[i];
    }
  }
  return out.str();
}

}  // namespace

const char* to_string(OracleMode mode) noexcept {
  switch (mode) {
    case OracleMode::perfect: return "perfect";
    case OracleMode::stuck: return "stuck";
    case OracleMode::misordered: return "misordered";
    case OracleMode::repeat_once: return "repeat_once";
    case OracleMode::irrelevant: return "irrelevant";
  }
  return "?";
}

OracleMode oracle_mode_from_string(std::string_view text) {
  for (auto m : {OracleMode::perfect, OracleMode::stuck, OracleMode::misordered,
                 OracleMode::repeat_once, OracleMode::irrelevant}) {
    if (text == to_string(m)) return m;
  }
  throw_argument("unknown oracle mode '" + std::string(text) + "'");
}

std::string step_narration(const ScriptStep& step) {
  return "A person " + lower_first(step.description);
}

ScriptOracleLlm::ScriptOracleLlm(ActivityScript script, OracleMode mode, int context_limit)
    : StubLanguageModel(std::string("oracle-") + to_string(mode), context_limit,
                        std::make_shared<HeuristicTokenizer>()),
      script_(std::move(script)),
      mode_(mode) {
  if (script_.steps().empty()) throw_argument("oracle needs a script with steps");
}

std::vector<std::string> ScriptOracleLlm::plan(const std::string& query, int z) const {
  const std::string q = lower(query);
  std::set<std::string> done;
  for (const auto& s : script_.steps()) {
    if (q.find(lower(s.description)) != std::string::npos) done.insert(s.step_id);
  }
  const auto order = script_.topological_order();
  auto ready = [&](const std::string& id, const std::set<std::string>& finished) {
    const auto preds = script_.predecessors(id);
    return std::all_of(preds.begin(), preds.end(),
                       [&](const std::string& p) { return finished.count(p) > 0; });
  };

  // Perfect continuation: remaining steps in a precedence-respecting order.
  std::vector<std::string> remaining;
  {
    std::set<std::string> finished = done;
    bool progressed = true;
    while (progressed) {
      progressed = false;
      for (const auto& id : order) {
        if (finished.count(id) || !ready(id, finished)) continue;
        remaining.push_back(id);
        finished.insert(id);
        progressed = true;
        break;
      }
    }
  }

  const auto describe = [&](const std::string& id) { return script_.step(id).description; };
  std::vector<std::string> items;

  switch (mode_) {
    case OracleMode::stuck:
      items.assign(static_cast<std::size_t>(z), script_.steps().front().description);
      return items;
    case OracleMode::irrelevant:
      items.assign(static_cast<std::size_t>(z), kOracleIrrelevantText);
      return items;
    case OracleMode::misordered:
      if (z == 1 && remaining.size() >= 2) {
        std::lock_guard lock(state_mutex_);
        if (deviated_.insert(q).second) return {describe(remaining.back())};
      }
      break;
    case OracleMode::repeat_once:
      if (z == 1) {
        const auto eval = script_.evaluation_step_ids();
        const bool assisted = std::any_of(eval.begin(), eval.end(),
                                          [&](const std::string& id) { return done.count(id) > 0; });
        std::lock_guard lock(state_mutex_);
        if (assisted && deviated_.empty()) {
          deviated_.insert(q);
          return {script_.steps().front().description};
        }
      }
      break;
    case OracleMode::perfect:
      break;
  }

  for (const auto& id : remaining) {
    if (static_cast<int>(items.size()) == z) break;
    items.push_back(describe(id));
  }
  if (items.empty()) items.push_back(kOracleDoneText);
  while (static_cast<int>(items.size()) < z) items.push_back(items.back());
  return items;
}

std::string ScriptOracleLlm::respond(const CompletionRequest& request) const {
  const std::string& prompt = request.prompt;
  if (is_summarization_prompt(prompt)) {
    std::vector<std::string> seen;
    for (auto& n : listed_narrations(prompt)) {
      if (std::find(seen.begin(), seen.end(), n) == seen.end()) seen.push_back(std::move(n));
    }
    return numbered_list(seen);
  }
  if (is_goal_generation_prompt(prompt)) {
    Json list = Json::array();
    list.push_back({{"user_goal", "They wanted to " + lower_first(script_.goal_text())},
                    {"confidence", 1.0},
                    {"explanation", "matches the observed steps"}});
    return list.dump();
  }
  const int z = std::max(1, requested_horizon(prompt).value_or(1));
  return render(plan(query_section(prompt), z), trailing_cue(prompt));
}

}  // namespace vidassist::stubs
