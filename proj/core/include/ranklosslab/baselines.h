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

// Comparison objectives: the sigmoid-smoothed AP-loss optimized by true
// gradients, the AUC-loss under the error-driven scheme, and the
// error-driven readings of cross-entropy and hinge loss.

#ifndef RANKLOSSLAB_BASELINES_H_
#define RANKLOSSLAB_BASELINES_H_

#include <array>
#include <cstddef>
#include <span>

#include "ranklosslab/ap_gradient.h"
#include "ranklosslab/sample_batch.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {

struct SmoothedApConfig {
  double k = 0.5;
  // Minimize -log(1 - F + epsilon) instead of F.
  bool log_space = false;
  double epsilon = 1e-2;

  void Validate() const;
};

struct LossAndGradient {
  double loss = 0.0;
  GradientVector grad;
};

// F = (1/|P|) sum_i sum_j S(x_ij) / (1 + sum_{k != i} S(x_ik)) with
// S(x) = sigmoid(x / k), and its exact gradient with respect to the scores.
// Degenerate batches give (0, zeros).
LossAndGradient SmoothedApLossAndGrad(const SampleBatch& batch,
                                      const SmoothedApConfig& cfg);

// Error-driven signal of the AUC-loss, whose primary terms are
// f(x_ij) / |N|. Normalized by |P|.
LossAndGradient AucGrad(const SampleBatch& batch, const StepConfig& cfg);

// Error-driven signal with softmax activation: softmax(logits) - onehot.
// `label` is zero based. Throws std::invalid_argument when out of range.
GradientVector SoftmaxErrorDriven(std::span<const double> logits,
                                  std::size_t label);

// Error-driven signal with the loss-augmented step (H(-x - 1), H(x - 1)) over
// the pair (x_1, x_2) = (-x, x). `label` 0 selects x_1, 1 selects x_2.
std::array<double, 2> HingeErrorDriven(double x, int label);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_BASELINES_H_
