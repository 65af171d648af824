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
#include <optional>

#include "vidassist/core/io.hpp"
#include "vidassist/providers/interfaces.hpp"

namespace vidassist {

/// What a provider spec may need besides itself.
struct ProviderContext {
  std::filesystem::path base_dir;            // resolves relative "path" fields
  std::optional<Vocabulary> vocabulary;      // random planner
  std::optional<ActivityScript> script;      // oracle planner
  std::vector<Narration> annotations;        // ground-truth narrator
};

/// Builds providers from a spec object:
///   {"llm": {...}, "summarizer_llm"?: {...}, "goal_llm"?: {...},
///    "embedder"?: {...}, "narrator"?: {...}, "vision"?: {...}}
/// Each entry has a "type":
///   llm:      fixture {path} | random {seed} | prose | oracle {mode} | remote {endpoint, ...}
///   embedder: bow {dim?} | table {path} | remote      (default bow)
///   narrator: ground_truth {min_clip_seconds?} | remote (default ground_truth)
///   vision:   stub {token_count?} | remote             (default stub)
Providers build_providers(const Json& spec, const ProviderContext& ctx);

/// Spec used by the bundled simulations: oracle planner in `mode`, the
/// bundled synonym table as embedder, stub narrator and encoder.
Json oracle_provider_spec(const std::string& mode, const std::filesystem::path& synonyms);

}  // namespace vidassist
