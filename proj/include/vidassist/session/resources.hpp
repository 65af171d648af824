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

#include "vidassist/session/manager.hpp"

namespace vidassist {

/// Resource factory that builds a fresh provider set from `spec` for every
/// session (see build_providers), with the session's script in context.
/// The example pool file, if any, is read once and embedded per session.
ResourceFactory spec_resource_factory(Json spec, std::filesystem::path base_dir,
                                      std::optional<std::filesystem::path> pool_path = std::nullopt);

}  // namespace vidassist
