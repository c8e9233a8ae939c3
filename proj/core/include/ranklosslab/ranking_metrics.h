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

// AP-loss and AUC-loss as functions of the scores of one batch.
//
// For a positive i and any valid sample k the pairwise difference is
// x_ik = s_k - s_i. The primary term of a positive/negative pair is
//
//   L_ij = f(x_ij) / (1 + sum_{k valid, k != i} f(x_ik)),
//
// where f is the configured step. The AP-loss is the mean over positives of
// sum_j L_ij and equals 1 - AP when f is the Heaviside step and there are no
// ties. Ties follow H(0) = 1: a tied sample counts as ranked above.
//
// Degenerate batches (no positive or no negative) have loss 0.

#ifndef RANKLOSSLAB_RANKING_METRICS_H_
#define RANKLOSSLAB_RANKING_METRICS_H_

#include <cstddef>
#include <vector>

#include "ranklosslab/sample_batch.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {

struct RankMetrics {
  double ap_loss = 0.0;
  double auc_loss = 0.0;
  double interpolated_ap_loss = 0.0;
};

// Primary terms of positive `positive_index` against every negative, in the
// order of PartitionBatch(batch).negatives. Throws std::out_of_range if the
// sample is not a positive.
std::vector<double> PrimaryTerms(const SampleBatch& batch,
                                 std::size_t positive_index,
                                 const StepConfig& cfg);

// O(|P| * n) evaluation with the configured step in numerator and
// denominator.
double ApLoss(const SampleBatch& batch, const StepConfig& cfg);

// Mean over positives of sum_j f(x_ij) / |N|.
double AucLoss(const SampleBatch& batch, const StepConfig& cfg);

// Reporting metrics. Always uses the Heaviside step and runs in
// O(n log n) by sorting, so it is cheap enough to evaluate every iteration.
RankMetrics ExactMetrics(const SampleBatch& batch);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_RANKING_METRICS_H_
