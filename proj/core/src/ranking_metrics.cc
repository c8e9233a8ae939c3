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

#include "ranklosslab/ranking_metrics.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace ranklosslab {
namespace {

// 1 + sum over valid k != i of step(s_k - s_i).
template <typename Step>
double RowDenominator(const SampleBatch& batch, std::size_t i, Step step) {
  double denominator = 1.0;
  const double si = batch.scores[i];
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (k == i || batch.labels[k] == kIgnoredLabel) continue;
    denominator += step(batch.scores[k] - si);
  }
  return denominator;
}

std::size_t CountAtLeast(const std::vector<double>& sorted, double value) {
  return static_cast<std::size_t>(
      sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), value));
}

}  // namespace

std::vector<double> PrimaryTerms(const SampleBatch& batch,
                                 std::size_t positive_index,
                                 const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  if (positive_index >= batch.size() ||
      batch.labels[positive_index] != kPositiveLabel) {
    throw std::out_of_range("PrimaryTerms: sample " +
                            std::to_string(positive_index) +
                            " is not a positive");
  }
  const PartitionedIndices parts = PartitionBatch(batch);
  return VisitStep(cfg, [&](auto step) {
    const double denominator = RowDenominator(batch, positive_index, step);
    const double si = batch.scores[positive_index];
    std::vector<double> terms;
    terms.reserve(parts.negatives.size());
    for (std::size_t j : parts.negatives) {
      terms.push_back(step(batch.scores[j] - si) / denominator);
    }
    return terms;
  });
}

double ApLoss(const SampleBatch& batch, const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return 0.0;
  return VisitStep(cfg, [&](auto step) {
    double total = 0.0;
    for (std::size_t i : parts.positives) {
      const double denominator = RowDenominator(batch, i, step);
      const double si = batch.scores[i];
      double row = 0.0;
      for (std::size_t j : parts.negatives) {
        row += step(batch.scores[j] - si) / denominator;
      }
      total += row;
    }
    return total / static_cast<double>(parts.positives.size());
  });
}

double AucLoss(const SampleBatch& batch, const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return 0.0;
  const double num_negatives = static_cast<double>(parts.negatives.size());
  return VisitStep(cfg, [&](auto step) {
    double total = 0.0;
    for (std::size_t i : parts.positives) {
      const double si = batch.scores[i];
      for (std::size_t j : parts.negatives) {
        total += step(batch.scores[j] - si) / num_negatives;
      }
    }
    return total / static_cast<double>(parts.positives.size());
  });
}

RankMetrics ExactMetrics(const SampleBatch& batch) {
  batch.Validate();
  const PartitionedIndices parts = PartitionBatch(batch);
  RankMetrics metrics;
  if (parts.positives.empty() || parts.negatives.empty()) return metrics;

  std::vector<double> negative_scores;
  negative_scores.reserve(parts.negatives.size());
  for (std::size_t j : parts.negatives) {
    negative_scores.push_back(batch.scores[j]);
  }
  std::vector<double> positive_scores;
  positive_scores.reserve(parts.positives.size());
  for (std::size_t i : parts.positives) {
    positive_scores.push_back(batch.scores[i]);
  }
  std::sort(negative_scores.begin(), negative_scores.end());
  std::sort(positive_scores.begin(), positive_scores.end());

  const double num_positives = static_cast<double>(positive_scores.size());
  const double num_negatives = static_cast<double>(negative_scores.size());
  double ap_total = 0.0;
  double auc_total = 0.0;
  double interpolated_total = 0.0;
  double max_precision = 0.0;
  // Ascending score order; the precision depends only on the score, so the
  // order among tied positives does not matter.
  for (double si : positive_scores) {
    // H(0) = 1: every sample tied with s_i, including i itself, ranks at or
    // above it.
    const double negatives_above =
        static_cast<double>(CountAtLeast(negative_scores, si));
    const double positives_above =
        static_cast<double>(CountAtLeast(positive_scores, si));
    const double row_loss = negatives_above / (negatives_above + positives_above);
    ap_total += row_loss;
    auc_total += negatives_above / num_negatives;
    max_precision = std::max(max_precision, 1.0 - row_loss);
    interpolated_total += 1.0 - max_precision;
  }
  metrics.ap_loss = ap_total / num_positives;
  metrics.auc_loss = auc_total / num_positives;
  metrics.interpolated_ap_loss = interpolated_total / num_positives;
  return metrics;
}

}  // namespace ranklosslab
