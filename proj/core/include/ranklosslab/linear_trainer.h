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

// Linear scoring models s_k = <f_k, theta> trained by the error-driven AP
// update, by gradient descent on the smoothed AP-loss, by the AUC variant, or
// by the inseparable-case update whose numerator uses the piecewise step.

#ifndef RANKLOSSLAB_LINEAR_TRAINER_H_
#define RANKLOSSLAB_LINEAR_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ranklosslab/ap_gradient.h"
#include "ranklosslab/baselines.h"
#include "ranklosslab/sample_batch.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {

struct LinearModel {
  Eigen::VectorXd theta;

  static LinearModel Zeros(Eigen::Index dim) {
    return {Eigen::VectorXd::Zero(dim)};
  }
};

struct RankingDataset {
  // One feature row per sample.
  Eigen::MatrixXd features;
  std::vector<int> labels;
  std::vector<int> group_ids;
  // Known separation margin and a weight vector achieving it, when the data
  // was constructed separable.
  std::optional<double> margin;
  std::optional<Eigen::VectorXd> certificate;

  std::size_t size() const { return labels.size(); }
  Eigen::Index dim() const { return features.cols(); }

  // Throws std::invalid_argument on mismatched sizes, bad labels or
  // non-finite features.
  void Validate() const;

  // Distinct group ids in increasing order.
  std::vector<int> Groups() const;
  RankingDataset SelectGroup(int group_id) const;
};

enum class LossKind { kErrorDrivenAp, kSmoothedApGd, kAuc, kInseparableAp };

std::string_view LossKindName(LossKind kind);
std::optional<LossKind> ParseLossKind(std::string_view name);

enum class Batching {
  // All groups ranked jointly every iteration.
  kAggregate,
  // Each iteration picks one group uniformly among those with a nonzero
  // update signal.
  kPerGroup,
};

std::string_view BatchingName(Batching batching);
std::optional<Batching> ParseBatching(std::string_view name);

struct TrainConfig {
  LossKind loss_kind = LossKind::kErrorDrivenAp;
  double step_size = 1.0;
  int max_iters = 1000;
  StepConfig step_cfg = StepConfig::Heaviside();
  bool stop_at_zero_loss = true;
  bool normalize_by_positives = true;
  bool interpolated = false;
  bool prune_trivial_negatives = true;
  SmoothedApConfig smoothed;
  Batching batching = Batching::kAggregate;
  // Drives the group choice in per-group mode.
  std::uint64_t seed = 0;
  // Keep theta every this many iterations; 0 keeps none.
  int theta_snapshot_every = 0;

  void Validate() const;
};

struct TraceRecord {
  int iter = 0;
  // Exact Heaviside AP-loss of the batch trained on at this iteration,
  // evaluated before the update.
  double ap_loss = 0.0;
  // Objective seen by the optimizer on the same batch: the configured-step
  // AP-loss, the smoothed loss, the AUC-loss or the inseparable surrogate.
  double surrogate = 0.0;
  std::int64_t wall_ns = 0;
  std::size_t pruned_neg = 0;
  // Group trained on, or -1 in aggregate mode.
  int group = -1;
};

struct TrainTrace {
  LossKind loss_kind = LossKind::kErrorDrivenAp;
  double step_size = 0.0;
  StepConfig step_cfg;
  std::vector<TraceRecord> records;
  // (iteration, theta before that iteration's update).
  std::vector<std::pair<int, Eigen::VectorXd>> thetas;
};

struct TrainResult {
  LinearModel model;
  TrainTrace trace;
  // Exact AP-loss of the final model on the whole dataset, ranked jointly.
  double final_ap_loss = 0.0;
  bool converged = false;
};

// scores = features * theta. Throws std::invalid_argument on a dimension
// mismatch.
SampleBatch ScoreDataset(const LinearModel& model, const RankingDataset& data);

// theta - eta * features^T * g with g the error-driven AP signal; with
// normalize_by_positives = false this is theta + eta * sum L_ij (f_i - f_j).
LinearModel ErrorDrivenStep(const LinearModel& model,
                            const RankingDataset& data,
                            const TrainConfig& cfg);

// Signal of the inseparable-case update: primary terms use the piecewise step
// in the numerator and the Heaviside step in the denominator. Normalized by
// |P|, which makes it the exact gradient of the surrogate loss.
GradResult InseparableGradient(const SampleBatch& batch, double delta);

// Requires cfg.step_cfg.kind == kPiecewise; cfg.step_size should be
// InseparableStepSize(data, delta) for the regret bound to apply.
LinearModel InseparableStep(const LinearModel& model,
                            const RankingDataset& data,
                            const TrainConfig& cfg);

TrainResult Train(const LinearModel& init, const RankingDataset& data,
                  const TrainConfig& cfg);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_LINEAR_TRAINER_H_
