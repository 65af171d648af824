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
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vidassist {

/// Lowercase alphabetic words; anything else (whitespace, digits,
/// punctuation) separates words.
std::vector<std::string> split_words(std::string_view text);

/// The frozen English closed-class word list (identical to
/// data/stopwords.txt).
const std::unordered_set<std::string>& default_stopwords();

/// One word per line; '#' starts a comment.
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

/// split_words minus stopwords.
std::vector<std::string> content_words(std::string_view text,
                                       const std::unordered_set<std::string>& stopwords);

}  // namespace vidassist
