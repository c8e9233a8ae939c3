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

#include "ranklosslab/linear_trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "ranklosslab/random.h"
#include "ranklosslab/ranking_metrics.h"
#include "ranklosslab/regret_bound.h"

namespace ranklosslab {
namespace {

struct Signal {
  GradientVector grad;
  double surrogate = 0.0;
  std::size_t pruned = 0;

  bool IsZero() const {
    return std::all_of(grad.begin(), grad.end(),
                       [](double g) { return g == 0.0; });
  }
};

Signal ComputeSignal(const SampleBatch& batch, const TrainConfig& cfg) {
  Signal out;
  switch (cfg.loss_kind) {
    case LossKind::kErrorDrivenAp: {
      GradOptions opts;
      opts.interpolated = cfg.interpolated;
      opts.prune_trivial_negatives = cfg.prune_trivial_negatives;
      opts.normalize_by_positives = cfg.normalize_by_positives;
      GradResult r = GradAccelerated(batch, cfg.step_cfg, opts);
      out.grad = std::move(r.grad);
      out.surrogate = r.loss;
      out.pruned = r.pruned_negative_count;
      return out;
    }
    case LossKind::kSmoothedApGd: {
      LossAndGradient r = SmoothedApLossAndGrad(batch, cfg.smoothed);
      out.grad = std::move(r.grad);
      out.surrogate = r.loss;
      return out;
    }
    case LossKind::kAuc: {
      LossAndGradient r = AucGrad(batch, cfg.step_cfg);
      if (!cfg.normalize_by_positives) {
        const double num_positives = static_cast<double>(
            std::count(batch.labels.begin(), batch.labels.end(),
                       kPositiveLabel));
        for (double& g : r.grad) g *= num_positives;
      }
      out.grad = std::move(r.grad);
      out.surrogate = r.loss;
      return out;
    }
    case LossKind::kInseparableAp: {
      GradResult r = InseparableGradient(batch, cfg.step_cfg.delta);
      out.grad = std::move(r.grad);
      out.surrogate = SurrogateLoss(batch, batch, cfg.step_cfg.delta);
      return out;
    }
  }
  throw std::invalid_argument("Train: unknown loss kind");
}

// theta - eta * features^T * g.
Eigen::VectorXd ApplySignal(const Eigen::VectorXd& theta,
                            const RankingDataset& data,
                            const GradientVector& grad, double step_size) {
  const Eigen::Map<const Eigen::VectorXd> g(grad.data(),
                                            static_cast<Eigen::Index>(grad.size()));
  return theta - step_size * (data.features.transpose() * g);
}

}  // namespace

void RankingDataset::Validate() const {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (features.rows() != n ||
      group_ids.size() != labels.size()) {
    throw std::invalid_argument(
        "RankingDataset: features, labels and group_ids must have one entry "
        "per sample");
  }
  if (!features.allFinite()) {
    throw std::invalid_argument("RankingDataset: features must be finite");
  }
  for (int label : labels) {
    if (label != kIgnoredLabel && label != kNegativeLabel &&
        label != kPositiveLabel) {
      throw std::invalid_argument("RankingDataset: label " +
                                  std::to_string(label) +
                                  " is not in {-1, 0, 1}");
    }
  }
}

std::vector<int> RankingDataset::Groups() const {
  const std::set<int> distinct(group_ids.begin(), group_ids.end());
  return {distinct.begin(), distinct.end()};
}

RankingDataset RankingDataset::SelectGroup(int group_id) const {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < group_ids.size(); ++i) {
    if (group_ids[i] == group_id) rows.push_back(static_cast<Eigen::Index>(i));
  }
  RankingDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(rows[r]);
    out.labels.push_back(labels[rows[r]]);
    out.group_ids.push_back(group_id);
  }
  out.margin = margin;
  out.certificate = certificate;
  return out;
}

std::string_view LossKindName(LossKind kind) {
  switch (kind) {
    case LossKind::kErrorDrivenAp:
      return "error_driven_ap";
    case LossKind::kSmoothedApGd:
      return "smoothed_ap_gd";
    case LossKind::kAuc:
      return "auc";
    case LossKind::kInseparableAp:
      return "inseparable_ap";
  }
  return "unknown";
}

std::optional<LossKind> ParseLossKind(std::string_view name) {
  for (LossKind kind : {LossKind::kErrorDrivenAp, LossKind::kSmoothedApGd,
                        LossKind::kAuc, LossKind::kInseparableAp}) {
    if (LossKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view BatchingName(Batching batching) {
  return batching == Batching::kAggregate ? "aggregate" : "per_group";
}

std::optional<Batching> ParseBatching(std::string_view name) {
  if (name == "aggregate") return Batching::kAggregate;
  if (name == "per_group") return Batching::kPerGroup;
  return std::nullopt;
}

void TrainConfig::Validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw std::invalid_argument("TrainConfig: step_size must be > 0, got " +
                                std::to_string(step_size));
  }
  if (max_iters < 1) {
    throw std::invalid_argument("TrainConfig: max_iters must be >= 1");
  }
  if (theta_snapshot_every < 0) {
    throw std::invalid_argument("TrainConfig: theta_snapshot_every must be >= 0");
  }
  step_cfg.Validate();
  if (loss_kind == LossKind::kSmoothedApGd) smoothed.Validate();
  if (loss_kind == LossKind::kInseparableAp &&
      step_cfg.kind != StepKind::kPiecewise) {
    throw std::invalid_argument(
        "TrainConfig: inseparable_ap needs the piecewise step");
  }
}

SampleBatch ScoreDataset(const LinearModel& model, const RankingDataset& data) {
  if (model.theta.size() != data.dim()) {
    throw std::invalid_argument(
        "ScoreDataset: theta has dimension " +
        std::to_string(model.theta.size()) + " but features have " +
        std::to_string(data.dim()));
  }
  const Eigen::VectorXd scores = data.features * model.theta;
  SampleBatch batch;
  batch.scores.assign(scores.data(), scores.data() + scores.size());
  batch.labels = data.labels;
  batch.group_ids = data.group_ids;
  return batch;
}

LinearModel ErrorDrivenStep(const LinearModel& model,
                            const RankingDataset& data,
                            const TrainConfig& cfg) {
  cfg.Validate();
  TrainConfig ap_cfg = cfg;
  ap_cfg.loss_kind = LossKind::kErrorDrivenAp;
  const Signal signal = ComputeSignal(ScoreDataset(model, data), ap_cfg);
  return {ApplySignal(model.theta, data, signal.grad, cfg.step_size)};
}

GradResult InseparableGradient(const SampleBatch& batch, double delta) {
  batch.Validate();
  const StepConfig ramp = StepConfig::Piecewise(delta);
  ramp.Validate();
  GradResult result;
  result.grad.assign(batch.size(), 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return result;

  const PiecewiseStep numerator_step{delta};
  const HeavisideStep denominator_step;
  for (std::size_t i : parts.positives) {
    const double si = batch.scores[i];
    double denominator = 1.0;
    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (k == i || batch.labels[k] == kIgnoredLabel) continue;
      denominator += denominator_step(batch.scores[k] - si);
    }
    for (std::size_t j : parts.negatives) {
      const double l = numerator_step(batch.scores[j] - si) / denominator;
      result.grad[i] -= l;
      result.grad[j] += l;
      result.loss += l;
    }
  }
  const double inv_p = 1.0 / static_cast<double>(parts.positives.size());
  result.loss *= inv_p;
  for (double& g : result.grad) g *= inv_p;
  return result;
}

LinearModel InseparableStep(const LinearModel& model,
                            const RankingDataset& data,
                            const TrainConfig& cfg) {
  if (cfg.step_cfg.kind != StepKind::kPiecewise) {
    throw std::invalid_argument("InseparableStep: needs the piecewise step");
  }
  cfg.Validate();
  const GradResult r =
      InseparableGradient(ScoreDataset(model, data), cfg.step_cfg.delta);
  return {ApplySignal(model.theta, data, r.grad, cfg.step_size)};
}

TrainResult Train(const LinearModel& init, const RankingDataset& data,
                  const TrainConfig& cfg) {
  cfg.Validate();
  data.Validate();
  if (init.theta.size() != data.dim()) {
    throw std::invalid_argument("Train: initial theta has dimension " +
                                std::to_string(init.theta.size()) +
                                " but features have " +
                                std::to_string(data.dim()));
  }
  using Clock = std::chrono::steady_clock;

  TrainResult result;
  result.model = init;
  result.trace.loss_kind = cfg.loss_kind;
  result.trace.step_size = cfg.step_size;
  result.trace.step_cfg = cfg.step_cfg;
  Eigen::VectorXd& theta = result.model.theta;

  const bool per_group = cfg.batching == Batching::kPerGroup;
  std::vector<int> group_ids;
  std::vector<RankingDataset> group_data;
  if (per_group) {
    group_ids = data.Groups();
    for (int g : group_ids) group_data.push_back(data.SelectGroup(g));
  }
  Rng rng(cfg.seed);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const auto start = Clock::now();
    if (cfg.theta_snapshot_every > 0 && iter % cfg.theta_snapshot_every == 0) {
      result.trace.thetas.emplace_back(iter, theta);
    }
    TraceRecord record;
    record.iter = iter;
    bool stop = false;

    if (!per_group) {
      const SampleBatch batch = ScoreDataset({theta}, data);
      record.ap_loss = ExactMetrics(batch).ap_loss;
      const Signal signal = ComputeSignal(batch, cfg);
      record.surrogate = signal.surrogate;
      record.pruned_neg = signal.pruned;
      if ((cfg.stop_at_zero_loss && record.ap_loss == 0.0) || signal.IsZero()) {
        stop = true;
      } else {
        theta = ApplySignal(theta, data, signal.grad, cfg.step_size);
      }
    } else {
      std::vector<std::size_t> candidates;
      std::vector<Signal> signals(group_data.size());
      std::vector<double> exact(group_data.size());
      bool all_zero_loss = true;
      for (std::size_t g = 0; g < group_data.size(); ++g) {
        const SampleBatch batch = ScoreDataset({theta}, group_data[g]);
        exact[g] = ExactMetrics(batch).ap_loss;
        all_zero_loss = all_zero_loss && exact[g] == 0.0;
        signals[g] = ComputeSignal(batch, cfg);
        if (!signals[g].IsZero()) candidates.push_back(g);
      }
      if ((cfg.stop_at_zero_loss && all_zero_loss) || candidates.empty()) {
        if (!result.trace.thetas.empty() && result.trace.thetas.back().first == iter) {
          result.trace.thetas.pop_back();
        }
        result.converged = true;
        break;
      }
      const std::size_t chosen = candidates[static_cast<std::size_t>(
          rng.UniformInt(0, static_cast<std::int64_t>(candidates.size()) - 1))];
      record.group = group_ids[chosen];
      record.ap_loss = exact[chosen];
      record.surrogate = signals[chosen].surrogate;
      record.pruned_neg = signals[chosen].pruned;
      theta = ApplySignal(theta, group_data[chosen], signals[chosen].grad,
                          cfg.step_size);
    }

    record.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                         Clock::now() - start)
                         .count();
    result.trace.records.push_back(record);
    if (stop) {
      result.converged = true;
      break;
    }
  }

  result.final_ap_loss = ExactMetrics(ScoreDataset(result.model, data)).ap_loss;
  return result;
}

}  // namespace ranklosslab
