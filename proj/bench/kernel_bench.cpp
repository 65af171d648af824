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

// Serial vs OpenMP timings for the batch metric and cosine kernels.
// Usage: kernel_bench [pairs=20000] [rows=50000] [dim=256] [reps=5]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include <omp.h>

#include "vidassist/kernels/cosine.hpp"
#include "vidassist/metrics/batch.hpp"

using namespace vidassist;
using Clock = std::chrono::steady_clock;

namespace {

ActionSequence random_sequence(std::mt19937_64& rng, int z, int verbs, int nouns) {
  ActionSequence s;
  s.horizon = z;
  for (int i = 0; i < z; ++i) {
    ActionLabel a;
    a.verb_index = static_cast<int>(rng() % verbs);
    a.noun_index = static_cast<int>(rng() % nouns);
    a.verb = "v" + std::to_string(a.verb_index);
    a.noun = "n" + std::to_string(a.noun_index);
    s.labels.push_back(a);
  }
  return s;
}

template <typename Fn>
double best_ms(int reps, Fn fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

int arg(int argc, char** argv, int i, int fallback) {
  return argc > i ? std::atoi(argv[i]) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  const int pairs = arg(argc, argv, 1, 20000);
  const int rows = arg(argc, argv, 2, 50000);
  const int dim = arg(argc, argv, 3, 256);
  const int reps = arg(argc, argv, 4, 5);
  const int z = 20;
  std::mt19937_64 rng(42);

  std::vector<ActionSequence> preds, gts;
  for (int i = 0; i < pairs; ++i) {
    preds.push_back(random_sequence(rng, z, 20, 40));
    gts.push_back(random_sequence(rng, z, 20, 40));
  }
  std::vector<metrics::PairScores> a, b;
  const double s_ms = best_ms(reps, [&] { a = metrics::score_pairs_serial(preds, gts, z); });
  const double p_ms = best_ms(reps, [&] { b = metrics::score_pairs_parallel(preds, gts, z); });
  const bool pairs_equal = a == b;

  std::normal_distribution<float> gauss(0.0f, 1.0f);
  EmbeddingVector q;
  for (int d = 0; d < dim; ++d) q.values.push_back(gauss(rng));
  std::vector<EmbeddingVector> m(rows);
  for (auto& v : m)
    for (int d = 0; d < dim; ++d) v.values.push_back(gauss(rng));
  std::vector<double> c1, c2;
  const double cs_ms = best_ms(reps, [&] { c1 = kernels::cosine_scores_serial(q, m); });
  const double cp_ms = best_ms(reps, [&] { c2 = kernels::cosine_scores_parallel(q, m); });
  const bool cos_equal = c1 == c2;

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-14s %10s %12s %12s %8s %s\n", "kernel", "n", "serial(ms)", "openmp(ms)",
              "speedup", "identical");
  std::printf("%-14s %10d %12.2f %12.2f %8.2f %s\n", "score_pairs", pairs, s_ms, p_ms,
              s_ms / p_ms, pairs_equal ? "yes" : "NO");
  std::printf("%-14s %10d %12.2f %12.2f %8.2f %s\n", "cosine_scores", rows, cs_ms, cp_ms,
              cs_ms / cp_ms, cos_equal ? "yes" : "NO");
  return pairs_equal && cos_equal ? 0 : 1;
}
