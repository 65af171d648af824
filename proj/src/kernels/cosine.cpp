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

#include "vidassist/kernels/cosine.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "vidassist/core/errors.hpp"

namespace vidassist::kernels {

namespace {

constexpr std::size_t kParallelThreshold = 2048;

void check_dims(const EmbeddingVector& query, std::span<const EmbeddingVector> rows) {
  for (const auto& r : rows) {
    if (r.dim() != query.dim()) {
      throw_argument("embedding dimension mismatch: " + std::to_string(query.dim()) + " vs " +
                     std::to_string(r.dim()));
    }
  }
}

}  // namespace

std::vector<double> cosine_scores_serial(const EmbeddingVector& query,
                                         std::span<const EmbeddingVector> rows) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = cosine(query, rows[i]);
  return out;
}

std::vector<double> cosine_scores_parallel(const EmbeddingVector& query,
                                           std::span<const EmbeddingVector> rows, int threads) {
  check_dims(query, rows);
  std::vector<double> out(rows.size());
  const auto n = static_cast<std::int64_t>(rows.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::int64_t i = 0; i < n; ++i) out[i] = cosine(query, rows[i]);
  return out;
}

std::vector<double> cosine_scores(const EmbeddingVector& query,
                                  std::span<const EmbeddingVector> rows) {
  if (rows.size() >= kParallelThreshold && omp_get_max_threads() > 1) {
    return cosine_scores_parallel(query, rows);
  }
  return cosine_scores_serial(query, rows);
}

std::vector<std::size_t> top_k(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

std::size_t argmax(std::span<const double> scores) {
  if (scores.empty()) throw_argument("argmax of an empty score list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace vidassist::kernels
