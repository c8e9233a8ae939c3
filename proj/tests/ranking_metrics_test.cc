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
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "ranklosslab/gradcheck.h"
#include "ranklosslab/random.h"

namespace ranklosslab {
namespace {

// 1 - AP computed from the ranked list, for batches without ties.
double RankListApLoss(const SampleBatch& batch) {
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (batch.labels[k] != kIgnoredLabel) order.push_back(k);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return batch.scores[a] > batch.scores[b];
  });
  double precision_sum = 0.0;
  int positives = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (batch.labels[order[rank]] == kPositiveLabel) {
      ++positives;
      precision_sum += static_cast<double>(positives) / static_cast<double>(rank + 1);
    }
  }
  return 1.0 - precision_sum / positives;
}

SampleBatch Permuted(const SampleBatch& batch, Rng& rng) {
  std::vector<std::size_t> perm(batch.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = perm.size(); k > 1; --k) {
    std::swap(perm[k - 1],
              perm[static_cast<std::size_t>(rng.UniformInt(0, static_cast<std::int64_t>(k) - 1))]);
  }
  SampleBatch out;
  for (std::size_t k : perm) {
    out.scores.push_back(batch.scores[k]);
    out.labels.push_back(batch.labels[k]);
    out.group_ids.push_back(batch.group_ids[k]);
  }
  return out;
}

TEST(ApLossTest, HandComputedValues) {
  const StepConfig h = StepConfig::Heaviside();
  EXPECT_DOUBLE_EQ(ApLoss(SampleBatch::Create({1, 2, 3}, {1, 0, 0}), h),
                   2.0 / 3.0);
  EXPECT_EQ(ApLoss(SampleBatch::Create({3, 1, 2}, {1, 0, 0}), h), 0.0);
  EXPECT_DOUBLE_EQ(ApLoss(SampleBatch::Create({4, 3, 2, 1}, {1, 0, 1, 0}), h),
                   1.0 / 6.0);
}

TEST(ApLossTest, TiesCountAsRankedAbove) {
  const SampleBatch batch = SampleBatch::Create({0, 0, 0}, {0, 1, 1});
  EXPECT_DOUBLE_EQ(ApLoss(batch, StepConfig::Heaviside()), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(ExactMetrics(batch).ap_loss, 1.0 / 3.0);
}

TEST(ApLossTest, DegenerateBatchesHaveZeroLoss) {
  for (const StepConfig& cfg :
       {StepConfig::Heaviside(), StepConfig::Piecewise(), StepConfig::Sigmoid()}) {
    EXPECT_EQ(ApLoss(SampleBatch::Create({1, 2}, {0, 0}), cfg), 0.0);
    EXPECT_EQ(ApLoss(SampleBatch::Create({1, 2}, {1, 1}), cfg), 0.0);
    EXPECT_EQ(ApLoss(SampleBatch::Create({}, {}), cfg), 0.0);
    EXPECT_EQ(ApLoss(SampleBatch::Create({1, 2}, {-1, 1}), cfg), 0.0);
  }
  const RankMetrics m = ExactMetrics(SampleBatch::Create({1, 2}, {0, -1}));
  EXPECT_EQ(m.ap_loss, 0.0);
  EXPECT_EQ(m.auc_loss, 0.0);
  EXPECT_EQ(m.interpolated_ap_loss, 0.0);
}

TEST(ApLossTest, PrimaryTermsMatchDefinition) {
  const SampleBatch batch = SampleBatch::Create({0.5, 2, 2, -1, 0.5, 3, 1, 2},
                                                {1, 0, 1, -1, 0, 0, 1, 0});
  // Positive 0 (score 0.5): everything valid scores >= 0.5 except itself;
  // 6 of them, so each of the 4 negatives contributes 1/7.
  const std::vector<double> terms = PrimaryTerms(batch, 0, StepConfig::Heaviside());
  ASSERT_EQ(terms.size(), 4u);
  for (double t : terms) EXPECT_DOUBLE_EQ(t, 1.0 / 7.0);
  EXPECT_THROW(PrimaryTerms(batch, 1, StepConfig::Heaviside()), std::out_of_range);
  EXPECT_THROW(PrimaryTerms(batch, 3, StepConfig::Heaviside()), std::out_of_range);
  EXPECT_THROW(PrimaryTerms(batch, 99, StepConfig::Heaviside()), std::out_of_range);
}

TEST(ApLossTest, FrozenOracleValues) {
  const SampleBatch batch = SampleBatch::Create({0.5, 2, 2, -1, 0.5, 3, 1, 2},
                                                {1, 0, 1, -1, 0, 0, 1, 0});
  EXPECT_NEAR(ApLoss(batch, StepConfig::Heaviside()), 269.0 / 420.0, 1e-15);
  EXPECT_NEAR(ApLoss(batch, StepConfig::Piecewise(1.0)), 2999.0 / 4950.0, 1e-15);
  EXPECT_NEAR(ApLoss(batch, StepConfig::Piecewise(0.5)), 352.0 / 585.0, 1e-15);
  const RankMetrics m = ExactMetrics(batch);
  EXPECT_NEAR(m.ap_loss, 269.0 / 420.0, 1e-15);
  EXPECT_NEAR(m.interpolated_ap_loss, 4.0 / 7.0, 1e-15);
}

TEST(ApLossTest, EqualsOneMinusAveragePrecisionWithoutTies) {
  Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    const SampleBatch batch = RandomBatch(rng, 60, 10, false);
    if (PartitionBatch(batch).negatives.empty()) continue;
    EXPECT_NEAR(ApLoss(batch, StepConfig::Heaviside()), RankListApLoss(batch),
                1e-12);
  }
}

TEST(ExactMetricsTest, MatchesQuadraticEvaluation) {
  Rng rng(22);
  for (int n = 0; n < 300; ++n) {
    const SampleBatch batch = RandomBatch(rng, 120, 20, n % 2 == 0);
    const RankMetrics m = ExactMetrics(batch);
    EXPECT_NEAR(m.ap_loss, ApLoss(batch, StepConfig::Heaviside()), 1e-12);
    EXPECT_NEAR(m.auc_loss, AucLoss(batch, StepConfig::Heaviside()), 1e-12);
    EXPECT_LE(m.interpolated_ap_loss, m.ap_loss + 1e-12);
    EXPECT_GE(m.ap_loss, 0.0);
    EXPECT_LE(m.ap_loss, 1.0);
  }
}

TEST(ApLossTest, IgnoredSamplesNeverMatter) {
  Rng rng(23);
  for (int n = 0; n < 200; ++n) {
    SampleBatch batch = RandomBatch(rng, 50, 8, n % 2 == 0);
    const StepConfig cfg = RandomStepConfig(rng, n);
    const double before = ApLoss(batch, cfg);
    const double exact_before = ExactMetrics(batch).ap_loss;
    for (int extra = 0; extra < 5; ++extra) {
      batch.scores.push_back(rng.Normal(0.0, 5.0));
      batch.labels.push_back(kIgnoredLabel);
      batch.group_ids.push_back(0);
    }
    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (batch.labels[k] == kIgnoredLabel) batch.scores[k] = rng.Normal(0.0, 5.0);
    }
    EXPECT_DOUBLE_EQ(ApLoss(batch, cfg), before);
    EXPECT_DOUBLE_EQ(ExactMetrics(batch).ap_loss, exact_before);
  }
}

TEST(ApLossTest, PermutationInvariant) {
  Rng rng(24);
  for (int n = 0; n < 200; ++n) {
    const SampleBatch batch = RandomBatch(rng, 50, 8, n % 2 == 0);
    const StepConfig cfg = RandomStepConfig(rng, n);
    const SampleBatch permuted = Permuted(batch, rng);
    EXPECT_NEAR(ApLoss(permuted, cfg), ApLoss(batch, cfg), 1e-12);
    EXPECT_EQ(ExactMetrics(permuted).ap_loss, ExactMetrics(batch).ap_loss);
  }
}

TEST(ApLossTest, HeavisideLossInvariantUnderMonotoneTransforms) {
  Rng rng(25);
  for (int n = 0; n < 200; ++n) {
    const SampleBatch batch = RandomBatch(rng, 50, 8, n % 2 == 0);
    SampleBatch affine = batch;
    SampleBatch cubed = batch;
    for (std::size_t k = 0; k < batch.size(); ++k) {
      affine.scores[k] = 3.0 * batch.scores[k] + 1.0;
      cubed.scores[k] = batch.scores[k] * batch.scores[k] * batch.scores[k];
    }
    const double loss = ExactMetrics(batch).ap_loss;
    EXPECT_EQ(ExactMetrics(affine).ap_loss, loss);
    EXPECT_EQ(ExactMetrics(cubed).ap_loss, loss);
    EXPECT_NEAR(ApLoss(cubed, StepConfig::Heaviside()), loss, 1e-12);
  }
}

TEST(AucLossTest, HandComputedValues) {
  const StepConfig h = StepConfig::Heaviside();
  EXPECT_DOUBLE_EQ(AucLoss(SampleBatch::Create({1, 2, 3}, {1, 0, 0}), h), 1.0);
  EXPECT_EQ(AucLoss(SampleBatch::Create({3, 1, 2}, {1, 0, 0}), h), 0.0);
  EXPECT_DOUBLE_EQ(AucLoss(SampleBatch::Create({0, 0, 0}, {1, 0, 0}), h), 1.0);
  EXPECT_DOUBLE_EQ(AucLoss(SampleBatch::Create({4, 3, 2, 1}, {1, 0, 1, 0}), h),
                   0.25);
}

TEST(SampleBatchTest, ValidationRejectsMalformedInput) {
  EXPECT_THROW(SampleBatch::Create({1, 2}, {1}), std::invalid_argument);
  EXPECT_THROW(SampleBatch::Create({1, 2}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(SampleBatch::Create({1, NAN}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(SampleBatch::Create({1, INFINITY}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(SampleBatch::Create({1, 2}, {1, 0}, {0}), std::invalid_argument);
  SampleBatch raw;
  raw.scores = {1.0};
  raw.labels = {1};
  EXPECT_THROW(ApLoss(raw, StepConfig::Heaviside()), std::invalid_argument);
}

TEST(SampleBatchTest, PartitionAndSelectGroup) {
  const SampleBatch batch =
      SampleBatch::Create({1, 2, 3, 4, 5}, {1, 0, -1, 1, 0}, {0, 1, 0, 1, 1});
  const PartitionedIndices parts = PartitionBatch(batch);
  EXPECT_EQ(parts.positives, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(parts.negatives, (std::vector<std::size_t>{1, 4}));
  const SampleBatch group = SelectGroup(batch, 1);
  EXPECT_EQ(group.scores, (std::vector<double>{2, 4, 5}));
  EXPECT_EQ(group.labels, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(group.group_ids, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(SampleBatch::Create({1}, {1}).group_ids, (std::vector<int>{0}));
}

}  // namespace
}  // namespace ranklosslab
