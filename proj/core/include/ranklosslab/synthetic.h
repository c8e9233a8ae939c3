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

// Synthetic ranking datasets with a controlled imbalance and a controlled
// separation margin.
//
// A random unit direction u is drawn. Each sample is a standard normal vector
// whose component along u is replaced by +-(margin/2 + |e|), e ~ N(0, 1),
// with the sign given by the label. Positives are therefore separated from
// negatives by at least `margin` along u. A negative margin makes the two
// half-lines overlap on a band of that width. Isotropic noise of scale
// noise_sigma is added last.
//
// A per-group score shift moves every sample of the group along a second unit
// direction v orthogonal to u. The shift leaves the joint separability under u
// intact while giving each image its own score offset under any weight vector
// with a component along v.

#ifndef RANKLOSSLAB_SYNTHETIC_H_
#define RANKLOSSLAB_SYNTHETIC_H_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ranklosslab/linear_trainer.h"

namespace ranklosslab {

struct SynthConfig {
  int dim = 20;
  int positives = 30;
  int negatives = 300;
  // Images per batch. Sample k goes to group k % groups.
  int groups = 1;
  double margin = 0.1;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  // Offset per group along the shift direction; empty means no shift.
  std::vector<double> score_shift;

  void Validate() const;
};

struct SyntheticData {
  RankingDataset dataset;
  // Unit direction separating the classes; dataset.certificate is set to it
  // when margin >= 0 and noise_sigma == 0.
  Eigen::VectorXd separating_direction;
  // Unit direction of the per-group shifts (zero when dim == 1).
  Eigen::VectorXd shift_direction;
};

// Deterministic for a fixed config. Positives come first, then negatives.
SyntheticData Generate(const SynthConfig& cfg);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_SYNTHETIC_H_
