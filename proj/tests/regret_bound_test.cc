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

#include "ranklosslab/regret_bound.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "ranklosslab/experiment.h"
#include "ranklosslab/gradcheck.h"
#include "ranklosslab/random.h"
#include "ranklosslab/ranking_metrics.h"
#include "ranklosslab/synthetic.h"

namespace ranklosslab {
namespace {

RankingDataset InseparableData(std::uint64_t seed, int groups = 1) {
  SynthConfig synth;
  synth.dim = 4;
  synth.positives = 10;
  synth.negatives = 50;
  synth.margin = -0.5;
  synth.noise_sigma = 0.5;
  synth.groups = groups;
  synth.seed = seed;
  return Generate(synth).dataset;
}

TrainResult TrainInseparable(const RankingDataset& data, double delta,
                             int iters, Batching batching = Batching::kAggregate) {
  TrainConfig cfg;
  cfg.loss_kind = LossKind::kInseparableAp;
  cfg.step_cfg = StepConfig::Piecewise(delta);
  cfg.step_size = InseparableStepSize(data, delta);
  cfg.max_iters = iters;
  cfg.stop_at_zero_loss = false;
  cfg.batching = batching;
  cfg.theta_snapshot_every = 1;
  return Train(LinearModel::Zeros(data.dim()), data, cfg);
}

TEST(SurrogateLossTest, HandComputedValues) {
  for (double delta : {0.5, 1.0, 2.0}) {
    const SampleBatch tie = SampleBatch::Create({0, 0}, {1, 0});
    EXPECT_DOUBLE_EQ(SurrogateLoss(tie, tie, delta), delta / 8.0);
    const SampleBatch ranked = SampleBatch::Create({5, 5 - 1.01 * delta}, {1, 0});
    EXPECT_EQ(SurrogateLoss(ranked, ranked, delta), 0.0);
  }
  EXPECT_THROW(SurrogateLoss(SampleBatch::Create({0, 0}, {1, 0}),
                             SampleBatch::Create({0, 0}, {0, 1}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(SurrogateLoss(SampleBatch::Create({0, 0}, {1, 0}),
                             SampleBatch::Create({0, 0}, {1, 0}), 0.0),
               std::invalid_argument);
}

TEST(SurrogateLossTest, DenominatorsComeFromTheReference) {
  const SampleBatch at_u = SampleBatch::Create({0, 1, -5}, {1, 0, 1});
  const SampleBatch at_ref = SampleBatch::Create({0, 3, 2}, {1, 0, 1});
  // Positive 0: Q(1)=1 over 1 + 2. Positive 2: Q(6)=6 over 1 + 1.
  EXPECT_DOUBLE_EQ(SurrogateLoss(at_u, at_ref, 1.0), (1.0 / 3.0 + 6.0 / 2.0) / 2.0);
}

TEST(SurrogateLossTest, DominatesScaledApLoss) {
  Rng rng(61);
  for (int n = 0; n < 200; ++n) {
    const SampleBatch batch = RandomBatch(rng, 60, 10, n % 2 == 0);
    const double delta = rng.Uniform(0.05, 2.0);
    EXPECT_GE(SurrogateLoss(batch, batch, delta),
              delta / 4.0 * ExactMetrics(batch).ap_loss - 1e-15);
  }
}

TEST(JacobianNormBoundTest, FrobeniusOfStackedDifferences) {
  RankingDataset data;
  data.features.resize(3, 2);
  data.features << 1, 0,  //
      0, 0,               //
      0, 1;
  data.labels = {1, 0, 0};
  data.group_ids = {0, 0, 0};
  EXPECT_DOUBLE_EQ(JacobianNormBound(data), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(InseparableStepSize(data, 0.5), 0.5 / 3.0);
}

TEST(JacobianNormBoundTest, BoundsTheSpectralNorm) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RankingDataset data = InseparableData(seed);
    std::vector<Eigen::RowVectorXd> rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.labels[i] != kPositiveLabel) continue;
      for (std::size_t j = 0; j < data.size(); ++j) {
        if (data.labels[j] != kNegativeLabel) continue;
        rows.push_back(data.features.row(static_cast<Eigen::Index>(j)) -
                       data.features.row(static_cast<Eigen::Index>(i)));
      }
    }
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(rows.size()), data.dim());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      stacked.row(static_cast<Eigen::Index>(r)) = rows[r];
    }
    const double spectral =
        Eigen::JacobiSVD<Eigen::MatrixXd>(stacked).singularValues()[0];
    EXPECT_GE(JacobianNormBound(data), spectral);
    EXPECT_NEAR(JacobianNormBound(data), stacked.norm(), 1e-9 * stacked.norm());
  }
}

TEST(VerifyBoundTest, HoldsForRandomComparators) {
  const double delta = 1.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const RankingDataset data = InseparableData(seed);
    const TrainResult trained = TrainInseparable(data, delta, 200);
    const double R = JacobianNormBound(data);
    Rng rng(seed + 100);
    for (int c = 0; c < 50; ++c) {
      Eigen::VectorXd u(data.dim());
      for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.Normal();
      u *= rng.Uniform(0.0, 5.0) / u.norm();
      const BoundReport report = VerifyBound(trained.trace, data, u, delta, R);
      EXPECT_TRUE(report.satisfied)
          << report.accumulated_ap_loss << " > " << report.bound_value;
      EXPECT_EQ(report.T, 200);
      EXPECT_GT(report.accumulated_ap_loss, 0.0);
      ASSERT_TRUE(report.offline.has_value());
      EXPECT_NEAR(report.offline->average_ap_loss,
                  report.accumulated_ap_loss / report.T, 1e-15);
    }
  }
}

TEST(VerifyBoundTest, InitialWeightsAreAValidComparator) {
  const RankingDataset data = InseparableData(4);
  const TrainResult trained = TrainInseparable(data, 0.5, 100);
  const double R = JacobianNormBound(data);
  const BoundReport report = VerifyBound(
      trained.trace, data, trained.trace.thetas.front().second, 0.5, R);
  EXPECT_TRUE(report.satisfied);
  EXPECT_DOUBLE_EQ(report.bound_value, 8.0 / 0.5 * report.surrogate_sum_at_u);
}

TEST(VerifyBoundTest, SeparatingComparatorLeavesOnlyTheDistanceTerm) {
  SynthConfig synth;
  synth.dim = 3;
  synth.positives = 8;
  synth.negatives = 40;
  synth.margin = 0.5;
  synth.seed = 2;
  const SyntheticData generated = Generate(synth);
  const RankingDataset& data = generated.dataset;
  const double delta = 1.0;
  const TrainResult trained = TrainInseparable(data, delta, 300);
  const double R = JacobianNormBound(data);
  // Margin 0.5 under the unit certificate; scale so that margins exceed delta.
  const Eigen::VectorXd u = *data.certificate * (2.5 * delta / 0.5);
  const BoundReport report = VerifyBound(trained.trace, data, u, delta, R);
  EXPECT_EQ(report.surrogate_sum_at_u, 0.0);
  EXPECT_DOUBLE_EQ(report.bound_value, 4.0 * R * R / (delta * delta) * u.squaredNorm());
  EXPECT_TRUE(report.satisfied);
}

TEST(VerifyBoundTest, HoldsInPerGroupMode) {
  const RankingDataset data = InseparableData(7, 3);
  const TrainResult trained = TrainInseparable(data, 1.0, 150, Batching::kPerGroup);
  const double R = JacobianNormBound(data);
  Rng rng(70);
  for (int c = 0; c < 20; ++c) {
    Eigen::VectorXd u(data.dim());
    for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.Normal();
    const BoundReport report = VerifyBound(trained.trace, data, u, 1.0, R);
    EXPECT_TRUE(report.satisfied);
  }
}

TEST(VerifyBoundTest, RejectsMismatchedStepAndMissingSnapshots) {
  const RankingDataset data = InseparableData(8);
  const double R = JacobianNormBound(data);
  TrainResult trained = TrainInseparable(data, 1.0, 20);
  const Eigen::VectorXd u = Eigen::VectorXd::Zero(data.dim());
  EXPECT_THROW(VerifyBound(trained.trace, data, u, 0.5, R), std::invalid_argument);
  EXPECT_THROW(VerifyBound(trained.trace, data, u, 1.0, 2.0 * R),
               std::invalid_argument);
  trained.trace.thetas.erase(trained.trace.thetas.begin() + 5);
  EXPECT_THROW(VerifyBound(trained.trace, data, u, 1.0, R), std::invalid_argument);
}

TEST(MaxPositiveQSumTest, HandComputedValue) {
  const RankingDataset data = CounterexampleDataset();
  // theta = (1, 1): scores (0, 1, -2). x for positive 1: -1 -> Q = 0;
  // positive 2: 2 -> Q = 2.
  EXPECT_DOUBLE_EQ(MaxPositiveQSum(Eigen::Vector2d(1, 1), data, 1.0), 2.0);
}

TEST(BoundSuiteTest, SmallSuitePasses) {
  BoundSuiteOptions opts;
  opts.runs = 2;
  opts.comparators = 10;
  opts.surrogate_instances = 50;
  opts.max_iters = 100;
  const BoundSuiteResult result = RunBoundSuite(opts);
  EXPECT_EQ(result.rows.size(), 20u);
  EXPECT_EQ(result.surrogate_checks, 50);
  EXPECT_TRUE(result.AllSatisfied());
}

}  // namespace
}  // namespace ranklosslab
