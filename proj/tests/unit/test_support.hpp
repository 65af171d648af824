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
#include <memory>
#include <random>
#include <string>

#include "vidassist/core/io.hpp"
#include "vidassist/providers/stubs.hpp"
#include "vidassist/vocab_map/embedding_cache.hpp"

namespace vidassist::testing_support {

inline std::filesystem::path source_dir() { return VIDASSIST_TEST_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path fixture_dir() { return source_dir() / "tests" / "fixtures"; }

inline ActivityScript script(const std::string& id) {
  return load_script(data_dir() / "scripts" / (id + ".json"));
}

inline Vocabulary mini_vocab() { return load_vocabulary(data_dir() / "mini" / "vocab.json"); }

inline std::shared_ptr<EmbeddingCache> synonym_cache() {
  return std::make_shared<EmbeddingCache>(stubs::load_table_embedder(data_dir() / "synonyms.json"));
}

inline std::shared_ptr<EmbeddingCache> bow_cache() {
  return std::make_shared<EmbeddingCache>(std::make_shared<stubs::BagOfWordsEmbedder>());
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("vidassist-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline Narration narration(const std::string& text, double start, double end) {
  return {text, start, end, NarrationSource::ground_truth, std::nullopt};
}

}  // namespace vidassist::testing_support
