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

#include "ranklosslab/sample_batch.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ranklosslab {

SampleBatch SampleBatch::Create(std::vector<double> scores,
                                std::vector<int> labels) {
  std::vector<int> group_ids(scores.size(), 0);
  return Create(std::move(scores), std::move(labels), std::move(group_ids));
}

SampleBatch SampleBatch::Create(std::vector<double> scores,
                                std::vector<int> labels,
                                std::vector<int> group_ids) {
  SampleBatch batch{std::move(scores), std::move(labels),
                    std::move(group_ids)};
  batch.Validate();
  return batch;
}

void SampleBatch::Validate() const {
  if (labels.size() != scores.size() || group_ids.size() != scores.size()) {
    throw std::invalid_argument(
        "SampleBatch: scores, labels and group_ids must have equal length (" +
        std::to_string(scores.size()) + ", " + std::to_string(labels.size()) +
        ", " + std::to_string(group_ids.size()) + ")");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int label = labels[i];
    if (label != kIgnoredLabel && label != kNegativeLabel &&
        label != kPositiveLabel) {
      throw std::invalid_argument("SampleBatch: label " +
                                  std::to_string(label) + " at index " +
                                  std::to_string(i) + " is not in {-1, 0, 1}");
    }
    if (!std::isfinite(scores[i])) {
      throw std::invalid_argument("SampleBatch: score at index " +
                                  std::to_string(i) + " is not finite");
    }
  }
}

PartitionedIndices PartitionBatch(const SampleBatch& batch) {
  PartitionedIndices out;
  for (std::size_t i = 0; i < batch.labels.size(); ++i) {
    if (batch.labels[i] == kPositiveLabel) {
      out.positives.push_back(i);
    } else if (batch.labels[i] == kNegativeLabel) {
      out.negatives.push_back(i);
    }
  }
  return out;
}

SampleBatch SelectGroup(const SampleBatch& batch, int group_id) {
  SampleBatch out;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch.group_ids[i] != group_id) continue;
    out.scores.push_back(batch.scores[i]);
    out.labels.push_back(batch.labels[i]);
    out.group_ids.push_back(group_id);
  }
  return out;
}

}  // namespace ranklosslab
