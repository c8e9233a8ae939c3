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

// Batch data model shared by every loss in the library.

#ifndef RANKLOSSLAB_SAMPLE_BATCH_H_
#define RANKLOSSLAB_SAMPLE_BATCH_H_

#include <cstddef>
#include <vector>

namespace ranklosslab {

inline constexpr int kIgnoredLabel = -1;
inline constexpr int kNegativeLabel = 0;
inline constexpr int kPositiveLabel = 1;

// Scores, ternary labels and group (image) ids of one mini-batch. The three
// sequences always share the same length. Samples labeled kIgnoredLabel never
// take part in a loss or a gradient.
struct SampleBatch {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<int> group_ids;

  // Builds and validates a batch. Without group ids every sample lands in
  // group 0. Throws std::invalid_argument on malformed input.
  static SampleBatch Create(std::vector<double> scores, std::vector<int> labels);
  static SampleBatch Create(std::vector<double> scores, std::vector<int> labels,
                            std::vector<int> group_ids);

  std::size_t size() const { return scores.size(); }
  bool empty() const { return scores.empty(); }

  // Throws std::invalid_argument if the lengths differ, a label is outside
  // {-1, 0, 1} or a score is not finite.
  void Validate() const;
};

// Indices of the positive (label 1) and negative (label 0) samples, each in
// increasing order.
struct PartitionedIndices {
  std::vector<std::size_t> positives;
  std::vector<std::size_t> negatives;
};

PartitionedIndices PartitionBatch(const SampleBatch& batch);

// Copy of `batch` restricted to the samples of `group_id`.
SampleBatch SelectGroup(const SampleBatch& batch, int group_id);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_SAMPLE_BATCH_H_
