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

#include <string_view>

// Prompt templates compiled in from templates/*.v1.txt (trailing newline
// removed). Placeholders are bracketed, e.g. "[goal]".
namespace vidassist::templates {

inline constexpr std::string_view kVersion = "v1";

std::string_view summarize();             // [goal], [narration history]
std::string_view goal_generation();       // [Narration History]
std::string_view lta_task();              // [Z], [unit]
std::string_view vpa_task();              // [Z], [unit]
std::string_view lta_no_text_history();  // [Z]

}  // namespace vidassist::templates
