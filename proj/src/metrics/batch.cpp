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

#include "vidassist/metrics/batch.hpp"

#include <omp.h>

#include <exception>

#include "vidassist/core/errors.hpp"
#include "vidassist/metrics/metrics.hpp"

namespace vidassist::metrics {

PairScores score_pair(const ActionSequence& pred, const ActionSequence& gt, int z) {
  PairScores s;
  s.ed_verb = edit_distance(pred, gt, z, Stream::verb);
  s.ed_noun = edit_distance(pred, gt, z, Stream::noun);
  s.ed_action = edit_distance(pred, gt, z, Stream::action);
  s.macc = mean_accuracy(pred, gt, z);
  s.miou = miou(pred.fitted(z), gt.fitted(z));
  s.sr = s.macc == 1.0 ? 1 : 0;
  return s;
}

namespace {

void check_sizes(std::span<const ActionSequence> preds, std::span<const ActionSequence> gts) {
  if (preds.size() != gts.size()) {
    throw_argument("prediction/ground-truth batch size mismatch: " +
                   std::to_string(preds.size()) + " vs " + std::to_string(gts.size()));
  }
}

}  // namespace

std::vector<PairScores> score_pairs_serial(std::span<const ActionSequence> preds,
                                           std::span<const ActionSequence> gts, int z) {
  check_sizes(preds, gts);
  std::vector<PairScores> out(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) out[i] = score_pair(preds[i], gts[i], z);
  return out;
}

std::vector<PairScores> score_pairs_parallel(std::span<const ActionSequence> preds,
                                             std::span<const ActionSequence> gts, int z,
                                             int threads) {
  check_sizes(preds, gts);
  if (z <= 0) throw_argument("horizon Z must be positive, got " + std::to_string(z));
  std::vector<PairScores> out(preds.size());
  const auto n = static_cast<std::int64_t>(preds.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  std::exception_ptr failure;

#pragma omp parallel for schedule(static) num_threads(nthreads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = score_pair(preds[i], gts[i], z);
    } catch (...) {
#pragma omp critical(vidassist_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace vidassist::metrics
