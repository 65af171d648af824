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

#include "vidassist/core/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "vidassist/core/errors.hpp"

namespace vidassist {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::argument: return "argument";
    case ErrorKind::schema: return "schema";
    case ErrorKind::data: return "data";
    case ErrorKind::budget: return "budget";
    case ErrorKind::provider: return "provider";
    case ErrorKind::prediction: return "prediction";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::not_found: return "not_found";
  }
  return "unknown";
}

std::string normalize_term(std::string_view term) {
  std::size_t begin = 0;
  std::size_t end = term.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(term[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(term[end - 1]))) --end;
  std::string out(term.substr(begin, end - begin));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

namespace {

std::vector<std::string> normalize_unique(std::vector<std::string> terms, const char* field) {
  if (terms.empty()) throw_schema(std::string("field '") + field + "' must be a non-empty list");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = normalize_term(terms[i]);
    if (terms[i].empty()) {
      throw_schema(std::string("field '") + field + "[" + std::to_string(i) + "]' is blank");
    }
    if (!seen.insert(terms[i]).second) {
      throw Error(ErrorKind::schema, "duplicate_term",
                  std::string("duplicate entry in '") + field + "': \"" + terms[i] + "\"");
    }
  }
  return terms;
}

std::optional<int> find_term(const std::vector<std::string>& terms, std::string_view term) {
  const std::string key = normalize_term(term);
  auto it = std::find(terms.begin(), terms.end(), key);
  if (it == terms.end()) return std::nullopt;
  return static_cast<int>(it - terms.begin());
}

}  // namespace

Vocabulary Vocabulary::make(std::vector<std::string> verbs, std::vector<std::string> nouns,
                            std::vector<std::pair<int, int>> actions) {
  Vocabulary v;
  v.verbs_ = normalize_unique(std::move(verbs), "verbs");
  v.nouns_ = normalize_unique(std::move(nouns), "nouns");
  if (actions.empty()) throw_schema("field 'actions' must list at least one feasible pair");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto [vi, ni] = actions[i];
    if (vi < 0 || vi >= static_cast<int>(v.verbs_.size()) || ni < 0 ||
        ni >= static_cast<int>(v.nouns_.size())) {
      std::ostringstream msg;
      msg << "field 'actions[" << i << "]' = [" << vi << "," << ni
          << "] is out of range (verbs=" << v.verbs_.size() << ", nouns=" << v.nouns_.size()
          << ")";
      throw Error(ErrorKind::schema, "index_out_of_range", msg.str());
    }
  }
  std::sort(actions.begin(), actions.end());
  actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
  v.actions_ = std::move(actions);
  return v;
}

bool Vocabulary::feasible(int verb_index, int noun_index) const {
  return std::binary_search(actions_.begin(), actions_.end(), std::pair{verb_index, noun_index});
}

std::optional<int> Vocabulary::verb_index(std::string_view verb) const {
  return find_term(verbs_, verb);
}

std::optional<int> Vocabulary::noun_index(std::string_view noun) const {
  return find_term(nouns_, noun);
}

ActionLabel ActionLabel::from_terms(const Vocabulary& vocab, std::string_view verb,
                                    std::string_view noun) {
  auto vi = vocab.verb_index(verb);
  auto ni = vocab.noun_index(noun);
  if (!vi || !ni) {
    throw Error(ErrorKind::data, "unknown_term",
                "action (" + std::string(verb) + ", " + std::string(noun) +
                    ") is not in the vocabulary");
  }
  return from_indices(vocab, *vi, *ni);
}

ActionLabel ActionLabel::from_indices(const Vocabulary& vocab, int verb_index, int noun_index) {
  if (verb_index < 0 || verb_index >= static_cast<int>(vocab.verbs().size()) || noun_index < 0 ||
      noun_index >= static_cast<int>(vocab.nouns().size())) {
    throw Error(ErrorKind::data, "index_out_of_range", "action index out of range");
  }
  return ActionLabel{verb_index, noun_index, vocab.verbs()[verb_index], vocab.nouns()[noun_index]};
}

std::string ActionLabel::text() const {
  if (is_no_action()) return "NO_ACTION";
  return verb + " " + noun;
}

ActionSequence ActionSequence::fitted(int z) const {
  if (z <= 0) throw_argument("horizon Z must be positive, got " + std::to_string(z));
  ActionSequence out;
  out.horizon = z;
  out.labels.assign(labels.begin(), labels.begin() + std::min<std::size_t>(labels.size(), z));
  out.labels.resize(z, ActionLabel::no_action());
  return out;
}

void Narration::validate() const {
  if (start_s > end_s) {
    throw Error(ErrorKind::data, "inverted_span",
                "narration span is inverted: [" + std::to_string(start_s) + ", " +
                    std::to_string(end_s) + "]");
  }
  if (normalize_term(text).empty()) {
    throw Error(ErrorKind::data, "blank_narration", "narration text is blank");
  }
  if (confidence && (*confidence < 0.0 || *confidence > 1.0)) {
    throw Error(ErrorKind::data, "bad_confidence", "narration confidence outside [0,1]");
  }
}

void VisualHistory::validate() const {
  for (std::size_t i = 0; i < narrations.size(); ++i) {
    narrations[i].validate();
    if (i > 0 && narrations[i].start_s < narrations[i - 1].start_s) {
      throw Error(ErrorKind::data, "unsorted_history", "narrations are not sorted by start time");
    }
  }
  if (goal && normalize_term(*goal).empty()) {
    throw Error(ErrorKind::data, "blank_goal", "goal is present but blank");
  }
  if (vision_block && vision_block->token_count <= 0) {
    throw Error(ErrorKind::data, "bad_vision_block", "vision block token_count must be positive");
  }
}

std::vector<std::string> VisualHistory::narration_texts() const {
  std::vector<std::string> out;
  out.reserve(narrations.size());
  for (const auto& n : narrations) out.push_back(n.text);
  return out;
}

EmbeddingVector EmbeddingVector::normalized() const {
  double sq = 0.0;
  for (float x : values) sq += static_cast<double>(x) * x;
  EmbeddingVector out = *this;
  if (sq == 0.0) return out;
  const double inv = 1.0 / std::sqrt(sq);
  for (float& x : out.values) x = static_cast<float>(x * inv);
  return out;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw_argument("embedding dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                   std::to_string(b.dim()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += static_cast<double>(a.values[i]) * b.values[i];
    na += static_cast<double>(a.values[i]) * a.values[i];
    nb += static_cast<double>(b.values[i]) * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

// --- ActivityScript -------------------------------------------------------

ActivityScript ActivityScript::make(std::string script_id, std::string title,
                                    std::string goal_text, std::vector<ScriptStep> steps,
                                    std::vector<std::pair<std::string, std::string>> precedence,
                                    int assist_boundary,
                                    std::vector<std::string> infeasible_actions) {
  ActivityScript s;
  s.script_id_ = std::move(script_id);
  s.title_ = std::move(title);
  s.goal_text_ = std::move(goal_text);
  s.steps_ = std::move(steps);
  s.precedence_ = std::move(precedence);
  s.assist_boundary_ = assist_boundary;
  s.infeasible_actions_ = std::move(infeasible_actions);

  if (s.script_id_.empty()) throw_schema("field 'script_id' is required");
  if (s.steps_.size() < 2) throw_schema("field 'steps' needs at least two steps");
  std::set<std::string> ids;
  for (auto& step : s.steps_) {
    if (step.step_id.empty()) throw_schema("every step needs a 'step_id'");
    if (!ids.insert(step.step_id).second) {
      throw Error(ErrorKind::schema, "duplicate_step", "duplicate step_id '" + step.step_id + "'");
    }
    if (step.canonical_phrases.empty()) step.canonical_phrases.push_back(step.description);
  }
  if (assist_boundary < 1 || assist_boundary > static_cast<int>(s.steps_.size()) - 1) {
    throw Error(ErrorKind::schema, "missing_boundary",
                "field 'assist_boundary' must be in [1, " + std::to_string(s.steps_.size() - 1) +
                    "], got " + std::to_string(assist_boundary));
  }
  for (const auto& [before, after] : s.precedence_) {
    if (!ids.count(before) || !ids.count(after)) {
      throw Error(ErrorKind::schema, "unknown_step",
                  "precedence edge (" + before + ", " + after + ") names an unknown step");
    }
  }

  // Cycle detection by DFS; report the cycle path.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [before, after] : s.precedence_) adj[before].push_back(after);
  std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
  std::vector<std::string> stack;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    color[node] = 1;
    stack.push_back(node);
    for (const auto& next : adj[node]) {
      if (color[next] == 1) {
        auto it = std::find(stack.begin(), stack.end(), next);
        std::string path;
        for (; it != stack.end(); ++it) path += *it + " -> ";
        path += next;
        throw Error(ErrorKind::schema, "cyclic_precedence", "precedence cycle: " + path);
      }
      if (color[next] == 0) visit(next);
    }
    stack.pop_back();
    color[node] = 2;
  };
  for (const auto& step : s.steps_) {
    if (color[step.step_id] == 0) visit(step.step_id);
  }

  s.n_eval_ = 0;
  for (std::size_t i = assist_boundary; i < s.steps_.size(); ++i) {
    if (!s.steps_[i].optional) ++s.n_eval_;
  }
  if (s.n_eval_ < 1) throw_schema("script has no non-optional steps after the boundary");
  return s;
}

std::optional<std::size_t> ActivityScript::step_position(std::string_view step_id) const {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i].step_id == step_id) return i;
  }
  return std::nullopt;
}

const ScriptStep& ActivityScript::step(std::string_view step_id) const {
  auto pos = step_position(step_id);
  if (!pos) {
    throw Error(ErrorKind::not_found, "unknown_step", "unknown step '" + std::string(step_id) + "'");
  }
  return steps_[*pos];
}

std::vector<std::string> ActivityScript::partial_progress_step_ids() const {
  std::vector<std::string> out;
  for (int i = 0; i < assist_boundary_; ++i) out.push_back(steps_[i].step_id);
  return out;
}

std::vector<std::string> ActivityScript::evaluation_step_ids() const {
  std::vector<std::string> out;
  for (std::size_t i = assist_boundary_; i < steps_.size(); ++i) {
    if (!steps_[i].optional) out.push_back(steps_[i].step_id);
  }
  return out;
}

std::vector<std::string> ActivityScript::predecessors(std::string_view step_id) const {
  std::vector<std::string> out;
  for (const auto& [before, after] : precedence_) {
    if (after == step_id) out.push_back(before);
  }
  return out;
}

std::vector<std::string> ActivityScript::topological_order() const {
  std::map<std::string, int> indegree;
  for (const auto& step : steps_) indegree[step.step_id] = 0;
  for (const auto& edge : precedence_) ++indegree[edge.second];
  std::vector<std::string> order;
  std::vector<bool> placed(steps_.size(), false);
  while (order.size() < steps_.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (placed[i] || indegree[steps_[i].step_id] != 0) continue;
      placed[i] = true;
      order.push_back(steps_[i].step_id);
      for (const auto& [before, after] : precedence_) {
        if (before == steps_[i].step_id) --indegree[after];
      }
      progressed = true;
      break;
    }
    if (!progressed) break;  // unreachable for validated scripts
  }
  return order;
}

// --- enum text ------------------------------------------------------------

const char* to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::pending: return "pending";
    case Outcome::executed: return "executed";
    case Outcome::skipped_redundant: return "skipped_redundant";
    case Outcome::skipped_infeasible: return "skipped_infeasible";
    case Outcome::skipped_irrelevant: return "skipped_irrelevant";
    case Outcome::system_error: return "system_error";
  }
  return "pending";
}

Outcome outcome_from_string(std::string_view text) {
  for (Outcome o : {Outcome::pending, Outcome::executed, Outcome::skipped_redundant,
                    Outcome::skipped_infeasible, Outcome::skipped_irrelevant,
                    Outcome::system_error}) {
    if (text == to_string(o)) return o;
  }
  throw_schema("unknown outcome '" + std::string(text) + "'");
}

bool is_skip(Outcome outcome) noexcept {
  return outcome == Outcome::skipped_redundant || outcome == Outcome::skipped_infeasible ||
         outcome == Outcome::skipped_irrelevant;
}

const char* to_string(NarrationSource source) noexcept {
  switch (source) {
    case NarrationSource::ground_truth: return "ground_truth";
    case NarrationSource::narrator: return "narrator";
    case NarrationSource::summarizer: return "summarizer";
  }
  return "ground_truth";
}

NarrationSource narration_source_from_string(std::string_view text) {
  if (text == "ground_truth") return NarrationSource::ground_truth;
  if (text == "narrator") return NarrationSource::narrator;
  if (text == "summarizer") return NarrationSource::summarizer;
  throw_schema("unknown narration source '" + std::string(text) + "'");
}

const char* to_string(Task task) noexcept { return task == Task::lta ? "lta" : "vpa"; }

Task task_from_string(std::string_view text) {
  const std::string t = normalize_term(text);
  if (t == "lta") return Task::lta;
  if (t == "vpa") return Task::vpa;
  throw_schema("unknown task '" + std::string(text) + "'");
}

}  // namespace vidassist
