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

// Experiment orchestration on synthetic data: loss comparisons, the imbalance
// sweep, the smoothed-AP counterexample, the regret-bound suite and the
// acceleration timings.

#ifndef RANKLOSSLAB_EXPERIMENT_H_
#define RANKLOSSLAB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ranklosslab/linear_trainer.h"
#include "ranklosslab/regret_bound.h"
#include "ranklosslab/synthetic.h"

namespace ranklosslab {

struct ExperimentSpec {
  std::string name = "experiment";
  SynthConfig synth;
  // One entry per competing loss.
  std::vector<TrainConfig> train;
  int repetitions = 1;
  std::string output_path = "out";
  // Initial weights; empty means zeros.
  std::vector<double> init_theta;

  void Validate() const;
};

struct ResultRow {
  LossKind loss_kind = LossKind::kErrorDrivenAp;
  int positives = 0;
  int negatives = 0;
  int repetition = 0;
  double final_ap_loss = 0.0;
  int iterations = 0;
  std::int64_t wall_ns = 0;
  bool converged = false;
};

struct LossRun {
  LossKind loss_kind = LossKind::kErrorDrivenAp;
  int repetition = 0;
  TrainTrace trace;
};

struct ExperimentResult {
  // Ordered by (repetition, train entry).
  std::vector<ResultRow> rows;
  std::vector<LossRun> runs;
};

// Repetition r trains on data generated with seed MixSeed(synth.seed, r);
// repetitions run on up to `workers` threads.
ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers = 1);

struct SweepSpec {
  ExperimentSpec base;
  std::vector<int> negatives = {500, 5000, 50000};
};

// Error-driven AP versus smoothed-AP gradient descent at |P| = 50 on
// separable data.
SweepSpec DefaultSweepSpec();

// One RunExperiment per negatives count; rows ordered by negatives.
std::vector<ResultRow> RunImbalanceSweep(const SweepSpec& spec,
                                         int workers = 1);

// Mean final exact AP-loss per negatives count for one loss, in sweep order.
std::vector<double> MeanFinalLossByNegatives(const std::vector<ResultRow>& rows,
                                             LossKind kind);

// Three samples (0,0) negative, (1,0) and (-3,1) positive.
RankingDataset CounterexampleDataset();

struct CounterexampleOptions {
  Eigen::Vector2d init{10.0, 5.0};
  double smoothed_k = 1.0;
  double smoothed_step = 1.0;
  int smoothed_iters = 100000;
  double error_driven_step = 1.0;
  int error_driven_iters = 10000;
};

struct CounterexampleResult {
  TrainResult smoothed;
  TrainResult error_driven;
  // Smoothed loss F at the final smoothed-GD iterate.
  double final_smooth_loss = 0.0;
  // Largest exact AP-loss seen along the smoothed-GD trajectory and the
  // smallest; both stay at 1/6 when gradient descent stalls.
  double smoothed_min_ap_loss = 0.0;
  double smoothed_max_ap_loss = 0.0;
};

CounterexampleResult RunCounterexample(const CounterexampleOptions& opts = {});

struct BoundSuiteOptions {
  std::uint64_t seed = 0;
  int runs = 10;
  int comparators = 50;
  int surrogate_instances = 200;
  double delta = 1.0;
  int max_iters = 400;
};

struct BoundSuiteRow {
  int run = 0;
  int comparator = 0;
  BoundReport report;
};

struct BoundSuiteResult {
  std::vector<BoundSuiteRow> rows;
  int surrogate_checks = 0;
  int surrogate_failures = 0;
  // min over instances of l(x, x) - (delta/4) L_AP(x).
  double min_surrogate_slack = 0.0;

  bool AllSatisfied() const;
};

// Inseparable training runs with eta = delta / R^2 checked against random
// comparators, plus the surrogate domination check on random batches.
BoundSuiteResult RunBoundSuite(const BoundSuiteOptions& opts = {});

struct AccelerationSample {
  int iter = 0;
  std::int64_t pruned_ns = 0;
  std::int64_t unpruned_ns = 0;
  std::size_t pruned_neg = 0;
  // max |difference| between pruned and unpruned loss and signal.
  double prune_diff = 0.0;
};

struct TimingBucket {
  int bucket = 0;
  int first_iter = 0;
  int last_iter = 0;
  double mean_pruned_ns = 0.0;
  double mean_unpruned_ns = 0.0;
  double mean_pruned_neg = 0.0;
};

struct AccelerationResult {
  // Repetitions concatenated in order.
  std::vector<std::vector<AccelerationSample>> repetitions;
  std::vector<TimingBucket> buckets;
  double max_prune_diff = 0.0;
};

// Trains with spec.train.front() (error-driven AP, piecewise step) and times
// the loss computation with and without pruning at every iteration.
AccelerationResult BenchAcceleration(const ExperimentSpec& spec,
                                     int buckets = 10);

// Default acceleration workload.
ExperimentSpec DefaultAccelerationSpec();

// Median over repetitions of the per-repetition median pruned time within
// the iteration fraction [begin, end).
double MedianPrunedNs(const AccelerationResult& result, double begin,
                      double end);

struct ScalingPoint {
  int negatives = 0;
  double median_ns = 0.0;
};

struct ScalingResult {
  std::vector<ScalingPoint> points;
  // Least-squares slope of log(time) on log(|N|).
  double exponent = 0.0;
};

// Times the unpruned accelerated path, which costs O(|P| |N|), on random
// scores at fixed |P|.
ScalingResult MeasureNegativeScaling(int positives,
                                     const std::vector<int>& negatives,
                                     int repeats, std::uint64_t seed);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_EXPERIMENT_H_
