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

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "vidassist/providers/interfaces.hpp"

namespace vidassist {

/// Exact-string memo in front of an Embedder. Safe for concurrent readers
/// and inserters; stored vectors are unit-normalized.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(std::shared_ptr<Embedder> embedder);

  EmbeddingVector get(const std::string& text);
  /// Embeds all misses in one provider call.
  std::vector<EmbeddingVector> get_many(const std::vector<std::string>& texts);

  std::size_t size() const;
  Embedder& embedder() const { return *embedder_; }

 private:
  std::shared_ptr<Embedder> embedder_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, EmbeddingVector> cache_;
};

}  // namespace vidassist
