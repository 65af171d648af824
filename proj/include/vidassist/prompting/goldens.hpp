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

namespace vidassist::goldens {

/// A prompt rendered from fixed inputs and its golden file name.
struct GoldenCase {
  std::string file;  // e.g. "lta_z20.v1.txt"
  std::string text;
};

/// Every prompt layout, rendered now from the built-in inputs.
std::vector<GoldenCase> render_cases();

struct GoldenResult {
  std::string file;
  bool ok = false;
  std::string detail;  // first differing line, or why the file is unusable
};

/// Byte-exact comparison of each rendered case against `dir`.
std::vector<GoldenResult> check(const std::filesystem::path& dir);
/// Rewrites every golden file in `dir`.
void update(const std::filesystem::path& dir);

}  // namespace vidassist::goldens
