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

#include "vidassist/core/io.hpp"

#include <fstream>
#include <sstream>

#include "vidassist/core/errors.hpp"

namespace vidassist {

namespace json_field {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw_schema(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::schema, "missing_field",
                where + ": missing required field '" + key + "'");
  }
  return *it;
}

std::string string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw_schema(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw_schema(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw_schema(where + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

bool boolean(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_boolean()) throw_schema(where + ": field '" + key + "' must be a boolean");
  return v.get<bool>();
}

}  // namespace json_field

namespace jf = json_field;

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<std::string> string_list(const Json& obj, const char* key, const std::string& where) {
  const Json& arr = jf::require(obj, key, where);
  if (!arr.is_array()) throw_schema(where + ": field '" + key + "' must be a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      throw_schema(where + ": field '" + key + "[" + std::to_string(i) + "]' must be a string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::schema, "malformed_json",
                source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                    ": malformed JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::not_found, "file_not_found", "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::data, "write_failed", "cannot write " + path.string());
  out << text;
}

std::vector<std::pair<int, Json>> parse_jsonl(const std::string& text, const std::string& source) {
  std::vector<std::pair<int, Json>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.emplace_back(lineno, Json::parse(line));
    } catch (const nlohmann::json::parse_error&) {
      throw Error(ErrorKind::schema, "malformed_line",
                  source + ":" + std::to_string(lineno) + ": malformed JSON line");
    }
  }
  return out;
}

// --- vocabulary -----------------------------------------------------------

Vocabulary vocabulary_from_json(const Json& j, const std::string& source) {
  auto verbs = string_list(j, "verbs", source);
  auto nouns = string_list(j, "nouns", source);
  const Json& arr = jf::require(j, "actions", source);
  if (!arr.is_array()) throw_schema(source + ": field 'actions' must be a list");
  std::vector<std::pair<int, int>> actions;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& pair = arr[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      throw_schema(source + ": field 'actions[" + std::to_string(i) +
                   "]' must be a [verb_index, noun_index] pair");
    }
    actions.emplace_back(pair[0].get<int>(), pair[1].get<int>());
  }
  try {
    return Vocabulary::make(std::move(verbs), std::move(nouns), std::move(actions));
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), source + ": " + e.what());
  }
}

Json vocabulary_to_json(const Vocabulary& vocab) {
  Json j;
  j["verbs"] = vocab.verbs();
  j["nouns"] = vocab.nouns();
  Json actions = Json::array();
  for (const auto& [v, n] : vocab.actions()) actions.push_back({v, n});
  j["actions"] = std::move(actions);
  return j;
}

Vocabulary load_vocabulary(const std::filesystem::path& path) {
  return vocabulary_from_json(parse_json_text(read_text_file(path), path.string()),
                              path.string());
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  write_text_file(path, vocabulary_to_json(vocab).dump(1) + "\n");
}

// --- scripts --------------------------------------------------------------

ActivityScript script_from_json(const Json& j, const std::string& source) {
  const Json& steps_json = jf::require(j, "steps", source);
  if (!steps_json.is_array()) throw_schema(source + ": field 'steps' must be a list");
  std::vector<ScriptStep> steps;
  for (std::size_t i = 0; i < steps_json.size(); ++i) {
    const std::string where = source + ": steps[" + std::to_string(i) + "]";
    const Json& s = steps_json[i];
    ScriptStep step;
    step.step_id = jf::string(s, "step_id", where);
    step.description = jf::string(s, "description", where);
    if (s.contains("canonical_phrases")) step.canonical_phrases = string_list(s, "canonical_phrases", where);
    if (s.contains("optional")) step.optional = jf::boolean(s, "optional", where);
    steps.push_back(std::move(step));
  }
  std::vector<std::pair<std::string, std::string>> precedence;
  if (j.contains("precedence")) {
    const Json& arr = j["precedence"];
    if (!arr.is_array()) throw_schema(source + ": field 'precedence' must be a list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_array() || arr[i].size() != 2 || !arr[i][0].is_string() ||
          !arr[i][1].is_string()) {
        throw_schema(source + ": field 'precedence[" + std::to_string(i) +
                     "]' must be a [before_id, after_id] pair");
      }
      precedence.emplace_back(arr[i][0].get<std::string>(), arr[i][1].get<std::string>());
    }
  }
  if (!j.contains("assist_boundary")) {
    throw Error(ErrorKind::schema, "missing_boundary",
                source + ": missing required field 'assist_boundary'");
  }
  std::vector<std::string> infeasible;
  if (j.contains("infeasible_actions")) infeasible = string_list(j, "infeasible_actions", source);
  try {
    return ActivityScript::make(jf::string(j, "script_id", source), jf::string(j, "title", source),
                                jf::string(j, "goal_text", source), std::move(steps),
                                std::move(precedence), jf::integer(j, "assist_boundary", source),
                                std::move(infeasible));
  } catch (const Error& e) {
    if (std::string(e.what()).rfind(source, 0) == 0) throw;
    throw Error(e.kind(), e.code(), source + ": " + e.what());
  }
}

Json script_to_json(const ActivityScript& script) {
  Json j;
  j["script_id"] = script.script_id();
  j["title"] = script.title();
  j["goal_text"] = script.goal_text();
  Json steps = Json::array();
  for (const auto& s : script.steps()) {
    Json step;
    step["step_id"] = s.step_id;
    step["description"] = s.description;
    step["canonical_phrases"] = s.canonical_phrases;
    step["optional"] = s.optional;
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  Json prec = Json::array();
  for (const auto& [a, b] : script.precedence()) prec.push_back({a, b});
  j["precedence"] = std::move(prec);
  j["assist_boundary"] = script.assist_boundary();
  j["infeasible_actions"] = script.infeasible_actions();
  return j;
}

ActivityScript load_script(const std::filesystem::path& path) {
  return script_from_json(parse_json_text(read_text_file(path), path.string()), path.string());
}

// --- session log ----------------------------------------------------------

namespace {
constexpr const char* kSessionLogSchema = "vidassist.session_log";
}

Json suggestion_to_json(const SuggestionRecord& r) {
  Json j;
  j["index"] = r.index;
  j["raw_text"] = r.raw_text;
  j["mapped_step"] = r.mapped_step ? Json(*r.mapped_step) : Json(nullptr);
  j["outcome"] = to_string(r.outcome);
  j["timestamp"] = r.timestamp;
  j["done"] = r.done;
  return j;
}

SuggestionRecord suggestion_from_json(const Json& j, const std::string& where) {
  SuggestionRecord r;
  r.index = jf::integer(j, "index", where);
  r.raw_text = jf::string(j, "raw_text", where);
  const Json& mapped = jf::require(j, "mapped_step", where);
  if (mapped.is_string()) {
    r.mapped_step = mapped.get<std::string>();
  } else if (!mapped.is_null()) {
    throw_schema(where + ": field 'mapped_step' must be a string or null");
  }
  r.outcome = outcome_from_string(jf::string(j, "outcome", where));
  r.timestamp = jf::number(j, "timestamp", where);
  if (j.contains("done")) r.done = jf::boolean(j, "done", where);
  return r;
}

std::string session_log_to_string(const std::vector<SuggestionRecord>& records) {
  std::string out;
  Json header;
  header["schema"] = kSessionLogSchema;
  header["version"] = 1;
  out += header.dump() + "\n";
  int previous = -1;
  bool first = true;
  for (const auto& r : records) {
    if (!first && r.index <= previous) {
      throw_argument("suggestion indices must be strictly increasing");
    }
    first = false;
    previous = r.index;
    out += suggestion_to_json(r).dump() + "\n";
  }
  return out;
}

std::vector<SuggestionRecord> session_log_from_string(const std::string& text,
                                                      const std::string& source) {
  auto lines = parse_jsonl(text, source);
  if (lines.empty()) throw_schema(source + ": missing header line");
  const auto& [hline, header] = lines.front();
  if (!header.is_object() || header.value("schema", "") != kSessionLogSchema) {
    throw_schema(source + ":" + std::to_string(hline) + ": not a session log header");
  }
  std::vector<SuggestionRecord> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [lineno, j] = lines[i];
    try {
      out.push_back(suggestion_from_json(j, source + ":" + std::to_string(lineno)));
    } catch (const Error& e) {
      throw Error(ErrorKind::schema, "malformed_line", e.what());
    }
  }
  return out;
}

void write_session_log(const std::vector<SuggestionRecord>& records,
                       const std::filesystem::path& path) {
  write_text_file(path, session_log_to_string(records));
}

std::vector<SuggestionRecord> read_session_log(const std::filesystem::path& path) {
  return session_log_from_string(read_text_file(path), path.string());
}

// --- narrations, histories, samples ----------------------------------------

Json narration_to_json(const Narration& n) {
  Json j;
  j["text"] = n.text;
  j["span"] = {n.start_s, n.end_s};
  j["source"] = to_string(n.source);
  j["confidence"] = n.confidence ? Json(*n.confidence) : Json(nullptr);
  return j;
}

Narration narration_from_json(const Json& j, const std::string& where) {
  Narration n;
  n.text = jf::string(j, "text", where);
  const Json& span = jf::require(j, "span", where);
  if (!span.is_array() || span.size() != 2 || !span[0].is_number() || !span[1].is_number()) {
    throw_schema(where + ": field 'span' must be [start_s, end_s]");
  }
  n.start_s = span[0].get<double>();
  n.end_s = span[1].get<double>();
  if (j.contains("source")) n.source = narration_source_from_string(jf::string(j, "source", where));
  if (j.contains("confidence") && !j["confidence"].is_null()) {
    n.confidence = jf::number(j, "confidence", where);
  }
  try {
    n.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, e.code(), where + ": " + e.what());
  }
  return n;
}

Json action_to_json(const ActionLabel& label) {
  if (label.is_no_action()) return Json(nullptr);
  return Json::array({label.verb, label.noun});
}

ActionLabel action_from_json(const Json& j, const Vocabulary& vocab, const std::string& where) {
  if (j.is_null()) return ActionLabel::no_action();
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw_schema(where + ": action must be [verb, noun]");
  }
  try {
    return ActionLabel::from_terms(vocab, j[0].get<std::string>(), j[1].get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, e.code(), where + ": " + e.what());
  }
}

Json sequence_to_json(const ActionSequence& seq) {
  Json arr = Json::array();
  for (const auto& l : seq.labels) arr.push_back(action_to_json(l));
  return arr;
}

Json history_to_json(const VisualHistory& h) {
  Json j;
  Json segs = Json::array();
  for (const auto& s : h.segments) {
    Json seg;
    seg["span"] = {s.start_s, s.end_s};
    seg["frame_refs"] = s.frame_refs;
    seg["gt_action"] = s.gt_action ? action_to_json(*s.gt_action) : Json(nullptr);
    segs.push_back(std::move(seg));
  }
  j["segments"] = std::move(segs);
  Json narr = Json::array();
  for (const auto& n : h.narrations) narr.push_back(narration_to_json(n));
  j["narrations"] = std::move(narr);
  j["goal"] = h.goal ? Json(*h.goal) : Json(nullptr);
  if (h.vision_block) {
    j["vision_block"] = {{"token_count", h.vision_block->token_count},
                         {"payload", h.vision_block->payload}};
  } else {
    j["vision_block"] = nullptr;
  }
  return j;
}

namespace {

VisualHistory history_from_json_impl(const Json& j, const Vocabulary* vocab,
                                     const std::string& where) {
  VisualHistory h;
  if (j.contains("segments")) {
    const Json& segs = j["segments"];
    if (!segs.is_array()) throw_schema(where + ": field 'segments' must be a list");
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const std::string w = where + ".segments[" + std::to_string(i) + "]";
      VideoSegment seg;
      const Json& span = jf::require(segs[i], "span", w);
      if (!span.is_array() || span.size() != 2) throw_schema(w + ": field 'span' must be a pair");
      seg.start_s = span[0].get<double>();
      seg.end_s = span[1].get<double>();
      if (segs[i].contains("frame_refs")) seg.frame_refs = string_list(segs[i], "frame_refs", w);
      if (vocab && segs[i].contains("gt_action") && !segs[i]["gt_action"].is_null()) {
        seg.gt_action = action_from_json(segs[i]["gt_action"], *vocab, w + ".gt_action");
      }
      h.segments.push_back(std::move(seg));
    }
  }
  const Json& narr = jf::require(j, "narrations", where);
  if (!narr.is_array()) throw_schema(where + ": field 'narrations' must be a list");
  for (std::size_t i = 0; i < narr.size(); ++i) {
    h.narrations.push_back(narration_from_json(narr[i], where + ".narrations[" + std::to_string(i) + "]"));
  }
  if (j.contains("goal") && !j["goal"].is_null()) h.goal = jf::string(j, "goal", where);
  if (j.contains("vision_block") && !j["vision_block"].is_null()) {
    const Json& vb = j["vision_block"];
    h.vision_block = VisionTokenBlock{jf::integer(vb, "token_count", where + ".vision_block"),
                                      vb.value("payload", "")};
  }
  try {
    h.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::schema, e.code(), where + ": " + e.what());
  }
  return h;
}

}  // namespace

VisualHistory history_from_json(const Json& j, const std::string& where) {
  return history_from_json_impl(j, nullptr, where);
}

Json sample_to_json(const BenchmarkSample& sample) {
  Json j;
  j["sample_id"] = sample.sample_id;
  j["task"] = to_string(sample.task);
  j["history"] = history_to_json(sample.history);
  j["gt_future"] = sequence_to_json(sample.gt_future);
  return j;
}

BenchmarkSample sample_from_json(const Json& j, const Vocabulary& vocab, const std::string& where) {
  BenchmarkSample s;
  s.sample_id = jf::string(j, "sample_id", where);
  s.task = task_from_string(jf::string(j, "task", where));
  s.history = history_from_json_impl(jf::require(j, "history", where), &vocab, where + ".history");
  const Json& fut = jf::require(j, "gt_future", where);
  if (!fut.is_array() || fut.empty()) throw_schema(where + ": field 'gt_future' must be a non-empty list");
  for (std::size_t i = 0; i < fut.size(); ++i) {
    s.gt_future.labels.push_back(
        action_from_json(fut[i], vocab, where + ".gt_future[" + std::to_string(i) + "]"));
  }
  s.gt_future.horizon = static_cast<int>(s.gt_future.labels.size());
  if (s.task == Task::vpa && !s.history.goal) {
    throw_schema(where + ": VPA samples must carry a goal");
  }
  return s;
}

std::vector<BenchmarkSample> load_dataset(const std::filesystem::path& path,
                                          const Vocabulary& vocab) {
  std::vector<BenchmarkSample> out;
  for (const auto& [lineno, j] : parse_jsonl(read_text_file(path), path.string())) {
    out.push_back(sample_from_json(j, vocab, path.string() + ":" + std::to_string(lineno)));
  }
  return out;
}

void save_dataset(const std::vector<BenchmarkSample>& samples, const std::filesystem::path& path) {
  std::string text;
  for (const auto& s : samples) text += sample_to_json(s).dump() + "\n";
  write_text_file(path, text);
}

}  // namespace vidassist
