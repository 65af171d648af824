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

#include "vidassist/prompting/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "vidassist/core/errors.hpp"
#include "vidassist/kernels/cosine.hpp"
#include "vidassist/prompting/templates.hpp"

namespace vidassist {

namespace {

constexpr const char* kIndent = "    ";

std::string replace_all(std::string text, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string task_header(std::string_view tpl, int z, const char* singular, const char* plural) {
  std::string text = replace_all(std::string(tpl), "[Z]", std::to_string(z));
  return replace_all(std::move(text), "[unit]", z == 1 ? singular : plural);
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string history_block(const VisualHistory& history, const std::optional<std::string>& goal,
                          int first_index, std::string* cue) {
  std::string out = std::string(kHistoryMarker) + "\n";
  if (goal) out += std::string(kIndent) + "Goal: " + *goal + "\n";
  const auto texts = history.narration_texts();
  out += numbered_list(texts, first_index, kIndent);
  if (!texts.empty()) out += "\n";
  *cue = std::to_string(first_index + static_cast<int>(texts.size())) + ".";
  out += std::string(kIndent) + *cue;
  return out;
}

std::string example_block(const PromptExample& ex, const std::optional<std::string>& goal) {
  std::string out = std::string(kExampleMarker) + "\n";
  if (goal) out += std::string(kIndent) + "Goal: " + *goal + "\n";
  out += numbered_list(ex.narrations, 1, kIndent);
  return out;
}

PromptParts base_parts(const std::vector<RetrievedExample>& examples) {
  PromptParts parts;
  for (const auto& r : examples) {
    parts.example_ids.push_back(r.example.example_id);
    parts.similarities.push_back(r.similarity);
  }
  return parts;
}

}  // namespace

// --- pool -----------------------------------------------------------------

ExamplePool::ExamplePool(std::vector<PromptExample> examples, EmbeddingCache& cache)
    : examples_(std::move(examples)) {
  std::vector<std::string> texts;
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    if (!examples_[i].embedding) {
      texts.push_back(join(examples_[i].narrations, " "));
      missing.push_back(i);
    }
  }
  if (!texts.empty()) {
    auto vecs = cache.get_many(texts);
    for (std::size_t m = 0; m < missing.size(); ++m) examples_[missing[m]].embedding = vecs[m];
  }
}

Json example_to_json(const PromptExample& ex) {
  Json j;
  j["example_id"] = ex.example_id;
  j["narrations"] = ex.narrations;
  j["goal"] = ex.goal ? Json(*ex.goal) : Json(nullptr);
  if (ex.embedding) j["embedding"] = ex.embedding->values;
  return j;
}

PromptExample example_from_json(const Json& j, const std::string& where) {
  PromptExample ex;
  ex.example_id = json_field::string(j, "example_id", where);
  const Json& narr = json_field::require(j, "narrations", where);
  if (!narr.is_array()) throw_schema(where + ": field 'narrations' must be a list");
  for (const auto& n : narr) {
    if (!n.is_string()) throw_schema(where + ": narrations must be strings");
    ex.narrations.push_back(n.get<std::string>());
  }
  if (j.contains("goal") && !j["goal"].is_null()) ex.goal = json_field::string(j, "goal", where);
  if (j.contains("embedding") && !j["embedding"].is_null()) {
    ex.embedding = EmbeddingVector{j["embedding"].get<std::vector<float>>()};
  }
  return ex;
}

std::vector<PromptExample> load_example_pool(const std::filesystem::path& path) {
  std::vector<PromptExample> out;
  for (const auto& [lineno, j] : parse_jsonl(read_text_file(path), path.string())) {
    out.push_back(example_from_json(j, path.string() + ":" + std::to_string(lineno)));
  }
  return out;
}

void save_example_pool(const std::vector<PromptExample>& examples,
                       const std::filesystem::path& path) {
  std::string text;
  for (const auto& ex : examples) text += example_to_json(ex).dump() + "\n";
  write_text_file(path, text);
}

// --- retrieval --------------------------------------------------------------

Retrieval retrieve_examples(const std::vector<std::string>& history_narrations,
                            const ExamplePool& pool, int k, EmbeddingCache& cache) {
  if (pool.empty()) throw_argument("retrieve_examples: example pool is empty");
  if (k < 0) throw_argument("retrieve_examples: k must be >= 0");
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), pool.size());
  Retrieval out;
  if (history_narrations.empty()) {
    out.fallback = true;
    for (std::size_t i = 0; i < kk; ++i) out.examples.push_back({pool.examples()[i], 0.0});
    return out;
  }
  const auto query = cache.get(join(history_narrations, " "));
  std::vector<EmbeddingVector> rows;
  rows.reserve(pool.size());
  for (const auto& ex : pool.examples()) rows.push_back(*ex.embedding);
  const auto scores = kernels::cosine_scores(query, rows);
  for (std::size_t i : kernels::top_k(scores, kk)) {
    out.examples.push_back({pool.examples()[i], scores[i]});
  }
  return out;
}

// --- templates ---------------------------------------------------------------

std::string numbered_list(const std::vector<std::string>& items, int first_index,
                          const std::string& indent) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += "\n";
    out += indent + std::to_string(first_index + static_cast<int>(i)) + ". " + items[i];
  }
  return out;
}

std::string PromptParts::render(const std::vector<std::size_t>& kept) const {
  std::string out = header + "\n";
  for (std::size_t i : kept) out += example_blocks.at(i) + "\n\n";
  out += history_block;
  return out;
}

std::string PromptParts::render_all() const {
  std::vector<std::size_t> all(example_blocks.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return render(all);
}

PromptParts lta_prompt_parts(const std::vector<RetrievedExample>& examples,
                             const VisualHistory& history, int z, int first_index) {
  if (z <= 0) throw_argument("horizon Z must be positive");
  PromptParts parts = base_parts(examples);
  parts.header = task_header(templates::lta_task(), z, "action", "actions");
  for (const auto& r : examples) parts.example_blocks.push_back(example_block(r.example, std::nullopt));
  parts.history_block = history_block(history, std::nullopt, first_index, &parts.continuation_cue);
  return parts;
}

PromptParts vpa_prompt_parts(const std::string& goal, const std::vector<RetrievedExample>& examples,
                             const VisualHistory& history, int z, bool goal_conditioning,
                             int first_index) {
  if (z <= 0) throw_argument("horizon Z must be positive");
  if (goal_conditioning && trim(goal).empty()) {
    throw_argument("goal conditioning is on but the goal is empty");
  }
  PromptParts parts = base_parts(examples);
  parts.header = task_header(templates::vpa_task(), z, "step", "steps");
  for (const auto& r : examples) {
    std::optional<std::string> g;
    if (goal_conditioning && r.example.goal) g = r.example.goal;
    parts.example_blocks.push_back(example_block(r.example, g));
  }
  std::optional<std::string> query_goal;
  if (goal_conditioning) query_goal = goal;
  parts.history_block = history_block(history, query_goal, first_index, &parts.continuation_cue);
  return parts;
}

PromptParts vision_only_prompt_parts(int z) {
  if (z <= 0) throw_argument("horizon Z must be positive");
  PromptParts parts;
  parts.header = replace_all(std::string(templates::lta_no_text_history()), "[Z]", std::to_string(z));
  parts.continuation_cue = "";
  return parts;
}

namespace {

AssembledPrompt assemble(const PromptParts& parts, const Tokenizer& tokenizer) {
  AssembledPrompt p;
  p.text = parts.render_all();
  p.token_count = tokenizer.count(p.text);
  p.examples_used = parts.example_ids;
  p.continuation_cue = parts.continuation_cue;
  p.tokenizer_exact = tokenizer.exact();
  return p;
}

}  // namespace

AssembledPrompt build_lta_prompt(const std::vector<RetrievedExample>& examples,
                                 const VisualHistory& history, int z, const Tokenizer& tokenizer) {
  return assemble(lta_prompt_parts(examples, history, z), tokenizer);
}

AssembledPrompt build_vpa_prompt(const std::string& goal,
                                 const std::vector<RetrievedExample>& examples,
                                 const VisualHistory& history, int z, bool goal_conditioning,
                                 const Tokenizer& tokenizer) {
  return assemble(vpa_prompt_parts(goal, examples, history, z, goal_conditioning), tokenizer);
}

AssembledPrompt fit_to_budget(const PromptParts& parts, const Tokenizer& tokenizer,
                              int context_limit, int reserved) {
  if (reserved < 0) throw_argument("reserved tokens must be >= 0");
  std::vector<std::size_t> kept(parts.example_blocks.size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;

  std::string text = parts.render(kept);
  int tokens = tokenizer.count(text);
  while (tokens + reserved > context_limit && !kept.empty()) {
    // Least similar goes first; among equals, the later one.
    std::size_t victim = 0;
    for (std::size_t j = 1; j < kept.size(); ++j) {
      if (parts.similarities.at(kept[j]) <= parts.similarities.at(kept[victim])) victim = j;
    }
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(victim));
    text = parts.render(kept);
    tokens = tokenizer.count(text);
  }
  if (tokens + reserved > context_limit) {
    throw Error(ErrorKind::budget, "history_overflow",
                "history alone needs " + std::to_string(tokens) + " + " + std::to_string(reserved) +
                    " reserved tokens, over the " + std::to_string(context_limit) +
                    "-token context; summarize the history first");
  }
  AssembledPrompt p;
  p.text = std::move(text);
  p.token_count = tokens;
  for (std::size_t i : kept) p.examples_used.push_back(parts.example_ids.at(i));
  p.reserved_vision_tokens = reserved;
  p.continuation_cue = parts.continuation_cue;
  p.tokenizer_exact = tokenizer.exact();
  return p;
}

// --- parsing ------------------------------------------------------------------

namespace {

// Returns the text after a "<ws>digits." prefix, or nullopt.
std::optional<std::string> strip_number(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  const std::size_t digits = i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == digits || i >= line.size() || line[i] != '.') return std::nullopt;
  return trim(line.substr(i + 1));
}

}  // namespace

std::vector<std::string> parse_completion(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto item = strip_number(line);
    if (item && !item->empty()) out.push_back(std::move(*item));
  }
  return out;
}

std::vector<std::string> parse_continuation(const std::string& cue, const std::string& completion) {
  std::size_t first = completion.find_first_not_of(" \t\r\n");
  if (cue.empty() || first == std::string::npos) return parse_completion(completion);
  const std::size_t eol = completion.find('\n', first);
  const std::string first_line =
      completion.substr(first, eol == std::string::npos ? std::string::npos : eol - first);
  if (strip_number(first_line)) return parse_completion(completion);
  return parse_completion(cue + " " + completion.substr(first));
}

std::string summarization_prompt(const std::string& goal,
                                 const std::vector<std::string>& narrations) {
  std::string g = trim(goal);
  while (!g.empty() && g.back() == '.') g.pop_back();
  std::string text = replace_all(std::string(templates::summarize()), "[goal]", g);
  return replace_all(std::move(text), "[narration history]", numbered_list(narrations));
}

std::string goal_generation_prompt(const std::vector<std::string>& narrations) {
  return replace_all(std::string(templates::goal_generation()), "[Narration History]",
                     numbered_list(narrations));
}

std::string query_section(const std::string& prompt) {
  const auto pos = prompt.rfind(kHistoryMarker);
  if (pos == std::string::npos) return {};
  return prompt.substr(pos);
}

std::optional<int> requested_horizon(const std::string& prompt) {
  static const std::regex re(R"(next (\d+) (?:actions?|steps?))");
  std::smatch m;
  if (std::regex_search(prompt, m, re)) return std::stoi(m[1].str());
  return std::nullopt;
}

std::optional<int> trailing_cue(const std::string& prompt) {
  const auto nl = prompt.find_last_of('\n');
  const std::string last = trim(prompt.substr(nl == std::string::npos ? 0 : nl + 1));
  if (last.size() < 2 || last.back() != '.') return std::nullopt;
  for (std::size_t i = 0; i + 1 < last.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(last[i]))) return std::nullopt;
  }
  return std::stoi(last.substr(0, last.size() - 1));
}

namespace {

// Anchors around a template placeholder: the last line before it and the
// first non-empty line after it. Both are goal-independent.
std::pair<std::string, std::string> anchors(std::string_view tpl, std::string_view placeholder) {
  const auto pos = tpl.find(placeholder);
  std::string before(tpl.substr(0, pos));
  while (!before.empty() && before.back() == '\n') before.pop_back();
  before = before.substr(before.find_last_of('\n') + 1);
  std::string after(tpl.substr(pos + placeholder.size()));
  after = trim(after);
  after = after.substr(0, after.find('\n'));
  return {before, after};
}

std::vector<std::string> between(const std::string& prompt,
                                 const std::pair<std::string, std::string>& a) {
  const auto b = prompt.find(a.first);
  if (b == std::string::npos) return {};
  const auto start = b + a.first.size();
  const auto e = prompt.find(a.second, start);
  return parse_completion(prompt.substr(start, e == std::string::npos ? e : e - start));
}

}  // namespace

bool is_summarization_prompt(const std::string& prompt) {
  static const auto a = anchors(templates::summarize(), "[narration history]");
  return prompt.find(a.second) != std::string::npos;
}

bool is_goal_generation_prompt(const std::string& prompt) {
  static const auto a = anchors(templates::goal_generation(), "[Narration History]");
  return prompt.find(a.second) != std::string::npos;
}

std::vector<std::string> listed_narrations(const std::string& prompt) {
  static const auto s = anchors(templates::summarize(), "[narration history]");
  static const auto g = anchors(templates::goal_generation(), "[Narration History]");
  if (is_summarization_prompt(prompt)) return between(prompt, s);
  if (is_goal_generation_prompt(prompt)) return between(prompt, g);
  return {};
}

}  // namespace vidassist
