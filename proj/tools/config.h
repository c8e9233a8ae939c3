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

// Experiment configuration files.
//
// A config is a JSON object with three sections:
//
//   {
//     "synth": {"dim": 20, "positives": 30, "negatives": 300, "groups": 1,
//               "margin": 0.1, "noise_sigma": 0, "seed": 0,
//               "score_shift": []},
//     "train": [{"loss_kind": "error_driven_ap", "step_size": 1,
//                "max_iters": 1000, "step_kind": "heaviside", "delta": 1,
//                "sigmoid_k": 0.5, "stop_at_zero_loss": true,
//                "normalize_by_positives": true, "interpolated": false,
//                "prune_trivial_negatives": true, "smoothed_k": 0.5,
//                "smoothed_log_space": false, "smoothed_epsilon": 0.01,
//                "batching": "aggregate", "seed": 0,
//                "theta_snapshot_every": 0}],
//     "run": {"name": "experiment", "repetitions": 1, "output_path": "out",
//             "init_theta": [], "negatives": [500, 5000, 50000]}
//   }
//
// Every key is optional. Missing keys keep the value of the base spec; a
// "train" entry starts from the TrainConfig defaults and may be a single
// object instead of a list. Unknown keys are rejected.

#ifndef RANKLOSSLAB_TOOLS_CONFIG_H_
#define RANKLOSSLAB_TOOLS_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "ranklosslab/experiment.h"

namespace ranklosslab::tools {

struct ExperimentConfig {
  ExperimentSpec spec;
  // run.negatives, read by the sweep only.
  std::optional<std::vector<int>> negatives;
};

// Throws std::invalid_argument on malformed JSON, unknown keys, wrong value
// types or a spec that fails validation.
ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const ExperimentSpec& base);

// Throws IoError when the file cannot be read.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path,
                                      const ExperimentSpec& base);

}  // namespace ranklosslab::tools

#endif  // RANKLOSSLAB_TOOLS_CONFIG_H_
