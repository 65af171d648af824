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

#include "vidassist/vocab_map/embedding_cache.hpp"

#include <mutex>

#include "vidassist/core/errors.hpp"

namespace vidassist {

EmbeddingCache::EmbeddingCache(std::shared_ptr<Embedder> embedder)
    : embedder_(std::move(embedder)) {
  if (!embedder_) throw_argument("EmbeddingCache needs an embedder");
}

EmbeddingVector EmbeddingCache::get(const std::string& text) {
  return get_many({text}).front();
}

std::vector<EmbeddingVector> EmbeddingCache::get_many(const std::vector<std::string>& texts) {
  std::vector<EmbeddingVector> out(texts.size());
  std::vector<std::string> misses;
  std::vector<std::size_t> miss_pos;
  {
    std::shared_lock lock(mutex_);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (auto it = cache_.find(texts[i]); it != cache_.end()) {
        out[i] = it->second;
      } else {
        misses.push_back(texts[i]);
        miss_pos.push_back(i);
      }
    }
  }
  if (misses.empty()) return out;

  std::vector<EmbeddingVector> fresh;
  try {
    fresh = embedder_->embed(misses);
  } catch (const ProviderError& e) {
    throw ProviderError(e.code(), std::string(e.what()) + " (while embedding \"" + misses.front() + "\"" +
                                      (misses.size() > 1 ? " and others)" : ")"),
                        e.retriable(), e.attempts());
  }
  std::unique_lock lock(mutex_);
  for (std::size_t m = 0; m < misses.size(); ++m) {
    auto normalized = fresh[m].normalized();
    cache_.try_emplace(misses[m], normalized);
    out[miss_pos[m]] = std::move(normalized);
  }
  return out;
}

std::size_t EmbeddingCache::size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

}  // namespace vidassist
