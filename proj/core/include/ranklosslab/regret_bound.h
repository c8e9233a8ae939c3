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

// Accumulated-loss bounds for the inseparable-case update.
//
// With step size eta = delta / R^2 the iterates satisfy, for every comparator
// weight vector u,
//
//   sum_t L_AP(theta_t) <= (8 / delta) sum_t l_t(u)
//                          + (4 R^2 / delta^2) ||u - theta_1||^2,
//
// where l_t(u) is the surrogate loss of the batch used at step t, with the
// pairwise differences taken at u and the denominators frozen at theta_t.
// When every step uses the same batch, two closed forms in terms of
// Z(u) = max_i sum_j Q(x_ij(u)) also bound the average loss.

#ifndef RANKLOSSLAB_REGRET_BOUND_H_
#define RANKLOSSLAB_REGRET_BOUND_H_

#include <optional>

#include <Eigen/Core>

#include "ranklosslab/linear_trainer.h"
#include "ranklosslab/sample_batch.h"

namespace ranklosslab {

// l(x, x_hat) = (1/|P|) sum_i sum_j Q(x_ij) / (1 + sum_{k != i} H(x_hat_ik)).
// Both batches must carry the same labels. Throws std::invalid_argument
// otherwise.
double SurrogateLoss(const SampleBatch& at_u, const SampleBatch& at_reference,
                     double delta);

// SurrogateLoss with x from `u` and x_hat from `trajectory_theta`, the whole
// dataset ranked jointly.
double SurrogateLossAt(const Eigen::VectorXd& u, const RankingDataset& data,
                       const Eigen::VectorXd& trajectory_theta, double delta);

// Upper bound on the 2-norm of the Jacobian of the positive/negative
// differences with respect to theta: the largest, over groups, Frobenius norm
// of the stacked rows f_j - f_i.
double JacobianNormBound(const RankingDataset& data);

// delta / R^2.
double InseparableStepSize(const RankingDataset& data, double delta);

// Z(u) = max over positives of sum_j Q(x_ij(u)).
double MaxPositiveQSum(const Eigen::VectorXd& u, const RankingDataset& data,
                       double delta);

struct OfflineBound {
  double average_ap_loss = 0.0;
  // (ln|P| + 1) / |P| * (8/delta) Z + (4 R^2 / delta^2) ||u - theta_1||^2 / T
  double harmonic_bound = 0.0;
  // (8Z/delta) / (1 + 8Z/delta) + (4 R^2 / delta^2) ||u - theta_1||^2 / T
  double ratio_bound = 0.0;
  bool satisfied = false;
};

struct BoundReport {
  int T = 0;
  double accumulated_ap_loss = 0.0;
  double bound_value = 0.0;
  double surrogate_sum_at_u = 0.0;
  double R = 0.0;
  double Z_u = 0.0;
  bool satisfied = false;
  // Present when the trace trained on a single group.
  std::optional<OfflineBound> offline;
};

inline constexpr double kBoundSlack = 1e-9;

// Evaluates both sides of the bound along `trace`, which must hold a theta
// snapshot for every record. Throws std::invalid_argument if a snapshot is
// missing or trace.step_size differs from delta / R^2.
BoundReport VerifyBound(const TrainTrace& trace, const RankingDataset& data,
                        const Eigen::VectorXd& u, double delta, double R);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_REGRET_BOUND_H_
