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

#include "ranklosslab/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ranklosslab/ap_gradient.h"
#include "ranklosslab/gradcheck.h"
#include "ranklosslab/parallel.h"
#include "ranklosslab/random.h"
#include "ranklosslab/ranking_metrics.h"

namespace ranklosslab {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ElapsedNs(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              start)
      .count();
}

LinearModel InitialModel(const ExperimentSpec& spec) {
  if (spec.init_theta.empty()) return LinearModel::Zeros(spec.synth.dim);
  LinearModel model;
  model.theta = Eigen::Map<const Eigen::VectorXd>(
      spec.init_theta.data(), static_cast<Eigen::Index>(spec.init_theta.size()));
  return model;
}

SynthConfig RepetitionSynth(const SynthConfig& synth, int repetition) {
  SynthConfig out = synth;
  out.seed = MixSeed(synth.seed, static_cast<std::uint64_t>(repetition));
  return out;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(
      values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double MaxAbsDiff(const GradResult& a, const GradResult& b) {
  double diff = std::abs(a.loss - b.loss);
  for (std::size_t k = 0; k < a.grad.size(); ++k) {
    diff = std::max(diff, std::abs(a.grad[k] - b.grad[k]));
  }
  return diff;
}

}  // namespace

void ExperimentSpec::Validate() const {
  if (name.empty()) {
    throw std::invalid_argument("ExperimentSpec: name must not be empty");
  }
  synth.Validate();
  if (train.empty()) {
    throw std::invalid_argument("ExperimentSpec: at least one train entry is required");
  }
  for (const TrainConfig& cfg : train) cfg.Validate();
  if (repetitions < 1) {
    throw std::invalid_argument("ExperimentSpec: repetitions must be >= 1");
  }
  if (!init_theta.empty() &&
      static_cast<int>(init_theta.size()) != synth.dim) {
    throw std::invalid_argument(
        "ExperimentSpec: init_theta has " + std::to_string(init_theta.size()) +
        " entries but dim is " + std::to_string(synth.dim));
  }
  for (double v : init_theta) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("ExperimentSpec: init_theta must be finite");
    }
  }
}

ExperimentResult RunExperiment(const ExperimentSpec& spec, int workers) {
  spec.Validate();
  const LinearModel init = InitialModel(spec);
  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  std::vector<ExperimentResult> per_rep(reps);

  ParallelFor(reps, workers, [&](std::size_t r) {
    const SyntheticData data =
        Generate(RepetitionSynth(spec.synth, static_cast<int>(r)));
    ExperimentResult& out = per_rep[r];
    for (const TrainConfig& cfg : spec.train) {
      const auto start = Clock::now();
      TrainResult trained = Train(init, data.dataset, cfg);
      ResultRow row;
      row.loss_kind = cfg.loss_kind;
      row.positives = spec.synth.positives;
      row.negatives = spec.synth.negatives;
      row.repetition = static_cast<int>(r);
      row.final_ap_loss = trained.final_ap_loss;
      row.iterations = static_cast<int>(trained.trace.records.size());
      row.wall_ns = ElapsedNs(start);
      row.converged = trained.converged;
      out.rows.push_back(row);
      out.runs.push_back({cfg.loss_kind, static_cast<int>(r),
                          std::move(trained.trace)});
    }
  });

  ExperimentResult result;
  for (ExperimentResult& rep : per_rep) {
    for (ResultRow& row : rep.rows) result.rows.push_back(row);
    for (LossRun& run : rep.runs) result.runs.push_back(std::move(run));
  }
  return result;
}

SweepSpec DefaultSweepSpec() {
  SweepSpec spec;
  spec.base.name = "sweep";
  spec.base.synth.dim = 10;
  spec.base.synth.positives = 50;
  spec.base.synth.margin = 0.1;
  spec.base.repetitions = 3;

  TrainConfig error_driven;
  error_driven.loss_kind = LossKind::kErrorDrivenAp;
  error_driven.step_cfg = StepConfig::Heaviside();
  error_driven.step_size = 1.0;
  error_driven.max_iters = 5000;

  TrainConfig smoothed;
  smoothed.loss_kind = LossKind::kSmoothedApGd;
  smoothed.step_size = 1.0;
  smoothed.max_iters = 100;
  smoothed.smoothed.k = 0.5;

  spec.base.train = {error_driven, smoothed};
  return spec;
}

std::vector<ResultRow> RunImbalanceSweep(const SweepSpec& spec, int workers) {
  if (spec.negatives.empty()) {
    throw std::invalid_argument("RunImbalanceSweep: negatives must not be empty");
  }
  std::vector<ResultRow> rows;
  for (int negatives : spec.negatives) {
    ExperimentSpec run = spec.base;
    run.synth.negatives = negatives;
    ExperimentResult result = RunExperiment(run, workers);
    rows.insert(rows.end(), result.rows.begin(), result.rows.end());
  }
  return rows;
}

std::vector<double> MeanFinalLossByNegatives(const std::vector<ResultRow>& rows,
                                             LossKind kind) {
  std::vector<int> order;
  std::vector<double> sums;
  std::vector<int> counts;
  for (const ResultRow& row : rows) {
    if (row.loss_kind != kind) continue;
    auto it = std::find(order.begin(), order.end(), row.negatives);
    std::size_t slot = static_cast<std::size_t>(it - order.begin());
    if (it == order.end()) {
      order.push_back(row.negatives);
      sums.push_back(0.0);
      counts.push_back(0);
    }
    sums[slot] += row.final_ap_loss;
    ++counts[slot];
  }
  for (std::size_t k = 0; k < sums.size(); ++k) sums[k] /= counts[k];
  return sums;
}

RankingDataset CounterexampleDataset() {
  RankingDataset data;
  data.features.resize(3, 2);
  data.features << 0.0, 0.0,  //
      1.0, 0.0,               //
      -3.0, 1.0;
  data.labels = {kNegativeLabel, kPositiveLabel, kPositiveLabel};
  data.group_ids = {0, 0, 0};
  return data;
}

CounterexampleResult RunCounterexample(const CounterexampleOptions& opts) {
  const RankingDataset data = CounterexampleDataset();
  const LinearModel init{opts.init};

  TrainConfig smoothed;
  smoothed.loss_kind = LossKind::kSmoothedApGd;
  smoothed.smoothed.k = opts.smoothed_k;
  smoothed.step_size = opts.smoothed_step;
  smoothed.max_iters = opts.smoothed_iters;

  TrainConfig error_driven;
  error_driven.loss_kind = LossKind::kErrorDrivenAp;
  error_driven.step_cfg = StepConfig::Heaviside();
  error_driven.step_size = opts.error_driven_step;
  error_driven.max_iters = opts.error_driven_iters;
  error_driven.normalize_by_positives = false;

  CounterexampleResult result;
  result.smoothed = Train(init, data, smoothed);
  result.error_driven = Train(init, data, error_driven);
  result.final_smooth_loss =
      SmoothedApLossAndGrad(ScoreDataset(result.smoothed.model, data),
                            smoothed.smoothed)
          .loss;
  const auto& records = result.smoothed.trace.records;
  if (!records.empty()) {
    const auto [lo, hi] = std::minmax_element(
        records.begin(), records.end(),
        [](const TraceRecord& a, const TraceRecord& b) {
          return a.ap_loss < b.ap_loss;
        });
    result.smoothed_min_ap_loss = std::min(lo->ap_loss, result.smoothed.final_ap_loss);
    result.smoothed_max_ap_loss = std::max(hi->ap_loss, result.smoothed.final_ap_loss);
  }
  return result;
}

bool BoundSuiteResult::AllSatisfied() const {
  if (rows.empty() || surrogate_failures > 0) return false;
  return std::all_of(rows.begin(), rows.end(), [](const BoundSuiteRow& row) {
    return row.report.satisfied;
  });
}

BoundSuiteResult RunBoundSuite(const BoundSuiteOptions& opts) {
  StepConfig::Piecewise(opts.delta).Validate();
  if (opts.runs < 1 || opts.comparators < 1 || opts.max_iters < 1 ||
      opts.surrogate_instances < 0) {
    throw std::invalid_argument("RunBoundSuite: counts must be positive");
  }
  BoundSuiteResult result;
  for (int run = 0; run < opts.runs; ++run) {
    SynthConfig synth;
    synth.dim = 5;
    synth.positives = 20;
    synth.negatives = 100;
    synth.margin = 0.0;
    synth.noise_sigma = 1.0;
    // Odd runs split the data into two groups trained one at a time.
    synth.groups = run % 2 == 0 ? 1 : 2;
    synth.seed = MixSeed(opts.seed, static_cast<std::uint64_t>(run));
    const RankingDataset data = Generate(synth).dataset;

    const double R = JacobianNormBound(data);
    TrainConfig cfg;
    cfg.loss_kind = LossKind::kInseparableAp;
    cfg.step_cfg = StepConfig::Piecewise(opts.delta);
    cfg.step_size = opts.delta / (R * R);
    cfg.max_iters = opts.max_iters;
    cfg.stop_at_zero_loss = false;
    cfg.batching = synth.groups == 1 ? Batching::kAggregate : Batching::kPerGroup;
    cfg.seed = synth.seed;
    cfg.theta_snapshot_every = 1;
    const TrainResult trained = Train(LinearModel::Zeros(synth.dim), data, cfg);

    Rng rng(MixSeed(synth.seed, 1));
    for (int c = 0; c < opts.comparators; ++c) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(synth.dim);
      if (c > 0) {
        for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.Normal();
        u *= rng.Uniform(0.0, 4.0) / u.norm();
      }
      result.rows.push_back(
          {run, c, VerifyBound(trained.trace, data, u, opts.delta, R)});
    }
  }

  Rng rng(MixSeed(opts.seed, 0x5eed));
  result.min_surrogate_slack = 0.0;
  for (int n = 0; n < opts.surrogate_instances; ++n) {
    const SampleBatch batch = RandomBatch(rng, 60, 10, n % 2 == 0);
    const double delta = rng.Uniform(0.05, 2.0);
    const double slack = SurrogateLoss(batch, batch, delta) -
                         delta / 4.0 * ExactMetrics(batch).ap_loss;
    if (result.surrogate_checks == 0 || slack < result.min_surrogate_slack) {
      result.min_surrogate_slack = slack;
    }
    ++result.surrogate_checks;
    if (slack < -kBoundSlack) ++result.surrogate_failures;
  }
  return result;
}

ExperimentSpec DefaultAccelerationSpec() {
  ExperimentSpec spec;
  spec.name = "bench";
  spec.synth.dim = 10;
  spec.synth.positives = 100;
  spec.synth.negatives = 5000;
  spec.synth.margin = 0.5;
  spec.repetitions = 3;
  TrainConfig cfg;
  cfg.loss_kind = LossKind::kErrorDrivenAp;
  cfg.step_cfg = StepConfig::Piecewise(1.0);
  cfg.interpolated = true;
  cfg.step_size = 0.05;
  cfg.max_iters = 200;
  cfg.stop_at_zero_loss = false;
  spec.train = {cfg};
  return spec;
}

AccelerationResult BenchAcceleration(const ExperimentSpec& spec, int buckets) {
  spec.Validate();
  if (buckets < 1) {
    throw std::invalid_argument("BenchAcceleration: buckets must be >= 1");
  }
  const TrainConfig& cfg = spec.train.front();
  if (cfg.loss_kind != LossKind::kErrorDrivenAp ||
      cfg.step_cfg.kind != StepKind::kPiecewise) {
    throw std::invalid_argument(
        "BenchAcceleration: the first train entry must be error_driven_ap with "
        "the piecewise step");
  }
  GradOptions pruned;
  pruned.interpolated = cfg.interpolated;
  pruned.normalize_by_positives = cfg.normalize_by_positives;
  pruned.prune_trivial_negatives = true;
  GradOptions unpruned = pruned;
  unpruned.prune_trivial_negatives = false;

  AccelerationResult result;
  if (spec.synth.positives + spec.synth.negatives == 0) return result;
  for (int r = 0; r < spec.repetitions; ++r) {
    const RankingDataset data = Generate(RepetitionSynth(spec.synth, r)).dataset;
    LinearModel model = InitialModel(spec);
    std::vector<AccelerationSample> samples;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      const SampleBatch batch = ScoreDataset(model, data);
      auto start = Clock::now();
      const GradResult fast = GradAccelerated(batch, cfg.step_cfg, pruned);
      const std::int64_t pruned_ns = ElapsedNs(start);
      start = Clock::now();
      const GradResult full = GradAccelerated(batch, cfg.step_cfg, unpruned);
      const std::int64_t unpruned_ns = ElapsedNs(start);

      AccelerationSample sample;
      sample.iter = iter;
      sample.pruned_ns = pruned_ns;
      sample.unpruned_ns = unpruned_ns;
      sample.pruned_neg = fast.pruned_negative_count;
      sample.prune_diff = MaxAbsDiff(fast, full);
      result.max_prune_diff = std::max(result.max_prune_diff, sample.prune_diff);
      samples.push_back(sample);

      const Eigen::Map<const Eigen::VectorXd> g(
          fast.grad.data(), static_cast<Eigen::Index>(fast.grad.size()));
      model.theta -= cfg.step_size * (data.features.transpose() * g);
    }
    result.repetitions.push_back(std::move(samples));
  }

  const int iters = cfg.max_iters;
  for (int b = 0; b < buckets; ++b) {
    TimingBucket bucket;
    bucket.bucket = b;
    bucket.first_iter = static_cast<int>(static_cast<long long>(b) * iters / buckets);
    bucket.last_iter =
        static_cast<int>(static_cast<long long>(b + 1) * iters / buckets) - 1;
    int count = 0;
    for (const auto& samples : result.repetitions) {
      for (int it = bucket.first_iter; it <= bucket.last_iter; ++it) {
        const AccelerationSample& s = samples[static_cast<std::size_t>(it)];
        bucket.mean_pruned_ns += static_cast<double>(s.pruned_ns);
        bucket.mean_unpruned_ns += static_cast<double>(s.unpruned_ns);
        bucket.mean_pruned_neg += static_cast<double>(s.pruned_neg);
        ++count;
      }
    }
    if (count > 0) {
      bucket.mean_pruned_ns /= count;
      bucket.mean_unpruned_ns /= count;
      bucket.mean_pruned_neg /= count;
    }
    result.buckets.push_back(bucket);
  }
  return result;
}

double MedianPrunedNs(const AccelerationResult& result, double begin,
                      double end) {
  std::vector<double> per_rep;
  for (const auto& samples : result.repetitions) {
    const auto n = static_cast<double>(samples.size());
    const auto first = static_cast<std::size_t>(std::floor(begin * n));
    const auto last = std::min(samples.size(),
                               static_cast<std::size_t>(std::floor(end * n)));
    std::vector<double> times;
    for (std::size_t k = first; k < last; ++k) {
      times.push_back(static_cast<double>(samples[k].pruned_ns));
    }
    if (!times.empty()) per_rep.push_back(Median(std::move(times)));
  }
  return Median(std::move(per_rep));
}

ScalingResult MeasureNegativeScaling(int positives,
                                     const std::vector<int>& negatives,
                                     int repeats, std::uint64_t seed) {
  if (positives < 1 || repeats < 1 || negatives.size() < 2) {
    throw std::invalid_argument(
        "MeasureNegativeScaling: need positives >= 1, repeats >= 1 and at "
        "least two sizes");
  }
  GradOptions opts;
  opts.prune_trivial_negatives = false;
  const StepConfig step = StepConfig::Piecewise(1.0);
  Rng rng(seed);

  ScalingResult result;
  for (int n_neg : negatives) {
    if (n_neg < 1) {
      throw std::invalid_argument("MeasureNegativeScaling: sizes must be >= 1");
    }
    SampleBatch batch;
    for (int k = 0; k < positives; ++k) {
      batch.scores.push_back(rng.Normal(0.5, 1.0));
      batch.labels.push_back(kPositiveLabel);
    }
    for (int k = 0; k < n_neg; ++k) {
      batch.scores.push_back(rng.Normal());
      batch.labels.push_back(kNegativeLabel);
    }
    batch.group_ids.assign(batch.scores.size(), 0);
    std::vector<double> times;
    for (int rep = 0; rep < repeats; ++rep) {
      const auto start = Clock::now();
      GradAccelerated(batch, step, opts);
      times.push_back(static_cast<double>(ElapsedNs(start)));
    }
    result.points.push_back({n_neg, Median(std::move(times))});
  }

  double mx = 0.0, my = 0.0;
  for (const ScalingPoint& p : result.points) {
    mx += std::log(static_cast<double>(p.negatives));
    my += std::log(std::max(p.median_ns, 1.0));
  }
  const double count = static_cast<double>(result.points.size());
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (const ScalingPoint& p : result.points) {
    const double dx = std::log(static_cast<double>(p.negatives)) - mx;
    sxy += dx * (std::log(std::max(p.median_ns, 1.0)) - my);
    sxx += dx * dx;
  }
  result.exponent = sxx > 0.0 ? sxy / sxx : 0.0;
  return result;
}

}  // namespace ranklosslab
