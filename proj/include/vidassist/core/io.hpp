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
#include <string>
#include <vector>

#include <json.hpp>

#include "vidassist/core/types.hpp"

namespace vidassist {

using Json = nlohmann::ordered_json;

// Schema-checked field access: errors name the offending field path.
namespace json_field {
const Json& require(const Json& obj, const char* key, const std::string& where);
std::string string(const Json& obj, const char* key, const std::string& where);
double number(const Json& obj, const char* key, const std::string& where);
int integer(const Json& obj, const char* key, const std::string& where);
bool boolean(const Json& obj, const char* key, const std::string& where);
}  // namespace json_field

/// Parses JSON text; syntax errors are reported as Error(schema) with the
/// source name plus line and column.
Json parse_json_text(const std::string& text, const std::string& source);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Vocabulary file: {"verbs":[...], "nouns":[...], "actions":[[vi,ni],...]}
Vocabulary vocabulary_from_json(const Json& j, const std::string& source = "vocabulary");
Json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary load_vocabulary(const std::filesystem::path& path);
void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path);

// Script file; `assist_boundary` is the 1-based index of the last
// partial-progress step.
ActivityScript script_from_json(const Json& j, const std::string& source = "script");
Json script_to_json(const ActivityScript& script);
ActivityScript load_script(const std::filesystem::path& path);

// Session log: JSONL with a header line, then one SuggestionRecord per line.
Json suggestion_to_json(const SuggestionRecord& record);
SuggestionRecord suggestion_from_json(const Json& j, const std::string& where);
std::string session_log_to_string(const std::vector<SuggestionRecord>& records);
std::vector<SuggestionRecord> session_log_from_string(const std::string& text,
                                                      const std::string& source = "session log");
void write_session_log(const std::vector<SuggestionRecord>& records,
                       const std::filesystem::path& path);
std::vector<SuggestionRecord> read_session_log(const std::filesystem::path& path);

// Building blocks shared by dataset, pool and service payloads.
Json narration_to_json(const Narration& n);
Narration narration_from_json(const Json& j, const std::string& where);
Json history_to_json(const VisualHistory& h);
VisualHistory history_from_json(const Json& j, const std::string& where);
Json action_to_json(const ActionLabel& label);
ActionLabel action_from_json(const Json& j, const Vocabulary& vocab, const std::string& where);
Json sequence_to_json(const ActionSequence& seq);

// Dataset file: JSONL of BenchmarkSample; gt actions stored as [verb, noun]
// text pairs and resolved against `vocab` on load.
Json sample_to_json(const BenchmarkSample& sample);
BenchmarkSample sample_from_json(const Json& j, const Vocabulary& vocab, const std::string& where);
std::vector<BenchmarkSample> load_dataset(const std::filesystem::path& path,
                                          const Vocabulary& vocab);
void save_dataset(const std::vector<BenchmarkSample>& samples, const std::filesystem::path& path);

/// Splits JSONL text into (1-based line number, parsed value) pairs,
/// skipping blank lines.
std::vector<std::pair<int, Json>> parse_jsonl(const std::string& text, const std::string& source);

}  // namespace vidassist
