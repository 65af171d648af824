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

#include "vidassist/providers/registry.hpp"

#include "vidassist/core/errors.hpp"
#include "vidassist/providers/remote.hpp"
#include "vidassist/providers/script_oracle.hpp"
#include "vidassist/providers/stubs.hpp"

namespace vidassist {

namespace {

std::filesystem::path resolve(const ProviderContext& ctx, const Json& j, const std::string& where) {
  std::filesystem::path p = json_field::string(j, "path", where);
  return p.is_relative() && !ctx.base_dir.empty() ? ctx.base_dir / p : p;
}

std::shared_ptr<LanguageModel> build_llm(const Json& j, const ProviderContext& ctx,
                                         const std::string& where) {
  const std::string type = json_field::string(j, "type", where);
  const int limit = j.contains("context_limit") ? json_field::integer(j, "context_limit", where)
                                                : 2048;
  if (type == "fixture") return stubs::FixtureLlm::load(resolve(ctx, j, where));
  if (type == "prose") {
    return std::make_shared<stubs::FixtureLlm>(std::vector<stubs::FixtureRule>{},
                                               stubs::kProseCompletion, limit);
  }
  if (type == "random") {
    if (!ctx.vocabulary) throw_argument(where + ": the random planner needs a vocabulary");
    const auto seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
    return std::make_shared<stubs::RandomActionLlm>(*ctx.vocabulary, seed, limit);
  }
  if (type == "oracle") {
    if (!ctx.script) throw_argument(where + ": the oracle planner needs a script");
    const std::string mode = j.contains("mode") ? json_field::string(j, "mode", where) : "perfect";
    return std::make_shared<stubs::ScriptOracleLlm>(*ctx.script,
                                                    stubs::oracle_mode_from_string(mode), limit);
  }
  if (type == "remote") {
    return std::make_shared<remote::RemoteLanguageModel>(remote::remote_config_from_json(j, where));
  }
  throw_schema(where + ".type: unknown llm type '" + type + "'");
}

}  // namespace

Providers build_providers(const Json& spec, const ProviderContext& ctx) {
  if (!spec.is_object()) throw_schema("providers: expected an object");
  Providers p;
  p.llm = build_llm(json_field::require(spec, "llm", "providers"), ctx, "providers.llm");
  if (spec.contains("summarizer_llm"))
    p.summarizer_llm = build_llm(spec.at("summarizer_llm"), ctx, "providers.summarizer_llm");
  if (spec.contains("goal_llm")) p.goal_llm = build_llm(spec.at("goal_llm"), ctx, "providers.goal_llm");

  const Json emb = spec.value("embedder", Json{{"type", "bow"}});
  const std::string etype = json_field::string(emb, "type", "providers.embedder");
  if (etype == "bow") {
    p.embedder = std::make_shared<stubs::BagOfWordsEmbedder>(emb.value("dim", 4096));
  } else if (etype == "table") {
    p.embedder = stubs::load_table_embedder(resolve(ctx, emb, "providers.embedder"));
  } else if (etype == "remote") {
    p.embedder = std::make_shared<remote::RemoteEmbedder>(
        remote::remote_config_from_json(emb, "providers.embedder"));
  } else {
    throw_schema("providers.embedder.type: unknown type '" + etype + "'");
  }

  const Json nar = spec.value("narrator", Json{{"type", "ground_truth"}});
  const std::string ntype = json_field::string(nar, "type", "providers.narrator");
  if (ntype == "ground_truth") {
    p.narrator = std::make_shared<stubs::GroundTruthNarrator>(ctx.annotations,
                                                              nar.value("min_clip_seconds", 0.0));
  } else if (ntype == "remote") {
    p.narrator = std::make_shared<remote::RemoteNarrator>(
        remote::remote_config_from_json(nar, "providers.narrator"));
  } else {
    throw_schema("providers.narrator.type: unknown type '" + ntype + "'");
  }

  const Json vis = spec.value("vision", Json{{"type", "stub"}});
  const std::string vtype = json_field::string(vis, "type", "providers.vision");
  if (vtype == "stub") {
    p.vision = std::make_shared<stubs::StubVisionEncoder>(vis.value("token_count", 256));
  } else if (vtype == "remote") {
    p.vision = std::make_shared<remote::RemoteVisionEncoder>(
        remote::remote_config_from_json(vis, "providers.vision"));
  } else {
    throw_schema("providers.vision.type: unknown type '" + vtype + "'");
  }
  return p;
}

Json oracle_provider_spec(const std::string& mode, const std::filesystem::path& synonyms) {
  return {{"llm", {{"type", "oracle"}, {"mode", mode}}},
          {"embedder", {{"type", "table"}, {"path", synonyms.string()}}},
          {"narrator", {{"type", "ground_truth"}}},
          {"vision", {{"type", "stub"}}}};
}

}  // namespace vidassist
