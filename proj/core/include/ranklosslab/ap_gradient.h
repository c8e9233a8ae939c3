/*
 * Copyright 2026 The ranklosslab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Error-driven update signals for the AP-loss.
//
// The desired change of each pairwise difference is dx_ij = -L_ij for a
// positive/negative pair and 0 otherwise. Back-propagating through
// x_ij = s_j - s_i gives the per-score signal
//
//   g_i = -sum_{j in N} L_ij          (i positive)
//   g_j = +sum_{i in P} L_ij          (j negative)
//
// normalized by |P|. Three routes compute it:
//
//   GradBruteForce          explicit loop over every ordered pair of valid
//                           samples; the reference.
//   GradInterpolatedDirect  materializes all primary terms, then applies the
//                           interpolated precision as a prefix maximum; the
//                           reference for interpolation.
//   GradAccelerated         one row per positive in ascending score order,
//                           trivial negatives pruned up front, O(|P| + |N|)
//                           memory.

#ifndef RANKLOSSLAB_AP_GRADIENT_H_
#define RANKLOSSLAB_AP_GRADIENT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "ranklosslab/sample_batch.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {

// One update signal per sample of the batch; zero for ignored samples.
using GradientVector = std::vector<double>;

struct GradOptions {
  // Make the precision of the k-th lowest scored positive non-decreasing in k
  // by rescaling its primary terms.
  bool interpolated = false;
  // Skip negatives whose activation is zero against every positive. Has no
  // effect for the sigmoid step, whose support is unbounded.
  bool prune_trivial_negatives = true;
  // Divide the signal by |P|. The loss is always normalized.
  bool normalize_by_positives = true;
  // Worker threads for the non-interpolated path. Results are bit-identical
  // for every value.
  int num_threads = 1;
};

struct GradResult {
  double loss = 0.0;
  GradientVector grad;
  std::size_t pruned_negative_count = 0;
};

GradResult GradBruteForce(const SampleBatch& batch, const StepConfig& cfg);

GradResult GradInterpolatedDirect(const SampleBatch& batch,
                                  const StepConfig& cfg);

GradResult GradAccelerated(const SampleBatch& batch, const StepConfig& cfg,
                           const GradOptions& opts = {});

// Concatenates per-image batches into one batch so that all scores are ranked
// jointly. The group id of each output sample is the index of its source
// batch.
SampleBatch MinibatchAggregate(std::span<const SampleBatch> batches);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_AP_GRADIENT_H_
