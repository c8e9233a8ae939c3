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

// Randomized equivalence check of the accelerated AP signal against the
// brute-force and direct interpolated references.

#ifndef RANKLOSSLAB_GRADCHECK_H_
#define RANKLOSSLAB_GRADCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ranklosslab/random.h"
#include "ranklosslab/sample_batch.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {

struct GradcheckOptions {
  std::uint64_t seed = 0;
  int instances = 500;
  int max_n = 200;
  int max_positives = 20;
  double rel_tol = 1e-9;
};

struct GradcheckReport {
  int instances = 0;
  int failures = 0;
  double max_err_plain = 0.0;
  double max_err_interpolated = 0.0;
  double max_prune_diff = 0.0;
  std::vector<std::string> messages;

  bool Passed() const { return instances > 0 && failures == 0; }
};

// |a - b| <= rel_tol * max(|a|, |b|), with an absolute floor of 1e-12 for
// values that are zero up to rounding.
bool NearlyEqual(double a, double b, double rel_tol);

// Random batch with 2 <= n <= max_n, 1 <= |P| <= max_positives, about 10%
// ignored samples and, when `ties`, repeated and grid-snapped scores.
SampleBatch RandomBatch(Rng& rng, int max_n, int max_positives, bool ties);

// Random valid step configuration; cycles through the three kinds by `index`.
StepConfig RandomStepConfig(Rng& rng, int index);

GradcheckReport RunGradcheck(const GradcheckOptions& opts = {});

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_GRADCHECK_H_
