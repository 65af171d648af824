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

#include <cstddef>
#include <span>
#include <vector>

#include "vidassist/core/types.hpp"

namespace vidassist::kernels {

/// Cosine of `query` against every row. Serial reference implementation.
std::vector<double> cosine_scores_serial(const EmbeddingVector& query,
                                         std::span<const EmbeddingVector> rows);

/// OpenMP implementation with per-row results identical to the serial one.
std::vector<double> cosine_scores_parallel(const EmbeddingVector& query,
                                           std::span<const EmbeddingVector> rows,
                                           int threads = 0);

/// Dispatches to the parallel kernel once `rows` is large enough to pay
/// for the thread team.
std::vector<double> cosine_scores(const EmbeddingVector& query,
                                  std::span<const EmbeddingVector> rows);

/// Indices of the k highest scores, descending; equal scores keep index
/// order. k is clipped to scores.size().
std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k);

/// Index of the highest score; the lowest index wins ties. Requires a
/// non-empty span.
std::size_t argmax(std::span<const double> scores);

}  // namespace vidassist::kernels
