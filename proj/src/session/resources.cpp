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

#include "vidassist/session/resources.hpp"

#include "vidassist/providers/registry.hpp"

namespace vidassist {

ResourceFactory spec_resource_factory(Json spec, std::filesystem::path base_dir,
                                      std::optional<std::filesystem::path> pool_path) {
  auto examples = std::make_shared<const std::vector<PromptExample>>(
      pool_path ? load_example_pool(*pool_path) : std::vector<PromptExample>{});
  return [spec = std::move(spec), base_dir = std::move(base_dir), examples](
             const ActivityScript& script, PredictorKind) {
    ProviderContext ctx;
    ctx.base_dir = base_dir;
    ctx.script = script;
    SessionResources res;
    res.providers = build_providers(spec, ctx);
    res.cache = std::make_shared<EmbeddingCache>(res.providers.embedder);
    if (!examples->empty()) res.pool = std::make_shared<const ExamplePool>(*examples, *res.cache);
    return res;
  };
}

}  // namespace vidassist
