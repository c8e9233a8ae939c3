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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "ranklosslab/ranking_metrics.h"
#include "ranklosslab/step_function.h"

namespace ranklosslab {
namespace {

double SquaredNorm(const Eigen::VectorXd& v) { return v.squaredNorm(); }

}  // namespace

double SurrogateLoss(const SampleBatch& at_u, const SampleBatch& at_reference,
                     double delta) {
  at_u.Validate();
  at_reference.Validate();
  if (at_u.labels != at_reference.labels) {
    throw std::invalid_argument("SurrogateLoss: batches carry different labels");
  }
  StepConfig::Piecewise(delta).Validate();
  const PartitionedIndices parts = PartitionBatch(at_u);
  if (parts.positives.empty() || parts.negatives.empty()) return 0.0;

  const HeavisideStep heaviside;
  double total = 0.0;
  for (std::size_t i : parts.positives) {
    const double ref_i = at_reference.scores[i];
    double denominator = 1.0;
    for (std::size_t k = 0; k < at_reference.size(); ++k) {
      if (k == i || at_reference.labels[k] == kIgnoredLabel) continue;
      denominator += heaviside(at_reference.scores[k] - ref_i);
    }
    double numerator = 0.0;
    for (std::size_t j : parts.negatives) {
      numerator += QIntegral(at_u.scores[j] - at_u.scores[i], delta);
    }
    total += numerator / denominator;
  }
  return total / static_cast<double>(parts.positives.size());
}

double SurrogateLossAt(const Eigen::VectorXd& u, const RankingDataset& data,
                       const Eigen::VectorXd& trajectory_theta, double delta) {
  return SurrogateLoss(ScoreDataset({u}, data),
                       ScoreDataset({trajectory_theta}, data), delta);
}

double JacobianNormBound(const RankingDataset& data) {
  data.Validate();
  double best = 0.0;
  for (int g : data.Groups()) {
    const RankingDataset group = data.SelectGroup(g);
    std::vector<Eigen::Index> positives;
    std::vector<Eigen::Index> negatives;
    for (std::size_t r = 0; r < group.size(); ++r) {
      if (group.labels[r] == kPositiveLabel) positives.push_back(static_cast<Eigen::Index>(r));
      if (group.labels[r] == kNegativeLabel) negatives.push_back(static_cast<Eigen::Index>(r));
    }
    double sum = 0.0;
    for (Eigen::Index i : positives) {
      for (Eigen::Index j : negatives) {
        sum += (group.features.row(j) - group.features.row(i)).squaredNorm();
      }
    }
    best = std::max(best, std::sqrt(sum));
  }
  return best;
}

double InseparableStepSize(const RankingDataset& data, double delta) {
  StepConfig::Piecewise(delta).Validate();
  const double r = JacobianNormBound(data);
  if (!(r > 0.0)) {
    throw std::invalid_argument(
        "InseparableStepSize: dataset has no positive/negative pair with "
        "distinct features");
  }
  return delta / (r * r);
}

double MaxPositiveQSum(const Eigen::VectorXd& u, const RankingDataset& data,
                       double delta) {
  const SampleBatch batch = ScoreDataset({u}, data);
  const PartitionedIndices parts = PartitionBatch(batch);
  double best = 0.0;
  for (std::size_t i : parts.positives) {
    double sum = 0.0;
    for (std::size_t j : parts.negatives) {
      sum += QIntegral(batch.scores[j] - batch.scores[i], delta);
    }
    best = std::max(best, sum);
  }
  return best;
}

BoundReport VerifyBound(const TrainTrace& trace, const RankingDataset& data,
                        const Eigen::VectorXd& u, double delta, double R) {
  StepConfig::Piecewise(delta).Validate();
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("VerifyBound: R must be > 0");
  }
  const double expected_eta = delta / (R * R);
  if (std::abs(trace.step_size - expected_eta) > 1e-12 * expected_eta) {
    throw std::invalid_argument(
        "VerifyBound: step size " + std::to_string(trace.step_size) +
        " differs from delta / R^2 = " + std::to_string(expected_eta));
  }
  BoundReport report;
  report.R = R;
  report.T = static_cast<int>(trace.records.size());
  if (trace.records.empty()) {
    report.satisfied = true;
    return report;
  }

  std::map<int, const Eigen::VectorXd*> snapshots;
  for (const auto& [iter, theta] : trace.thetas) snapshots[iter] = &theta;
  auto snapshot = [&](int iter) -> const Eigen::VectorXd& {
    const auto it = snapshots.find(iter);
    if (it == snapshots.end()) {
      throw std::invalid_argument("VerifyBound: no theta snapshot for iteration " +
                                  std::to_string(iter));
    }
    return *it->second;
  };

  std::map<int, RankingDataset> group_cache;
  auto batch_data = [&](int group) -> const RankingDataset& {
    if (group < 0) return data;
    auto it = group_cache.find(group);
    if (it == group_cache.end()) {
      it = group_cache.emplace(group, data.SelectGroup(group)).first;
    }
    return it->second;
  };

  const Eigen::VectorXd& theta_1 = snapshot(trace.records.front().iter);
  bool single_batch = true;
  for (const TraceRecord& record : trace.records) {
    const Eigen::VectorXd& theta_t = snapshot(record.iter);
    const RankingDataset& d = batch_data(record.group);
    const SampleBatch at_theta = ScoreDataset({theta_t}, d);
    report.accumulated_ap_loss += ExactMetrics(at_theta).ap_loss;
    report.surrogate_sum_at_u +=
        SurrogateLoss(ScoreDataset({u}, d), at_theta, delta);
    single_batch = single_batch && record.group == trace.records.front().group;
  }
  const double distance_term =
      4.0 * R * R / (delta * delta) * SquaredNorm(u - theta_1);
  report.bound_value = 8.0 / delta * report.surrogate_sum_at_u + distance_term;
  report.satisfied =
      report.accumulated_ap_loss <= report.bound_value + kBoundSlack;

  const RankingDataset& first = batch_data(trace.records.front().group);
  report.Z_u = MaxPositiveQSum(u, first, delta);
  if (single_batch) {
    const double num_positives = static_cast<double>(
        std::count(first.labels.begin(), first.labels.end(), kPositiveLabel));
    const double t = static_cast<double>(report.T);
    const double z_term = 8.0 * report.Z_u / delta;
    OfflineBound offline;
    offline.average_ap_loss = report.accumulated_ap_loss / t;
    if (num_positives > 0.0) {
      offline.harmonic_bound = (std::log(num_positives) + 1.0) / num_positives *
                                   z_term +
                               distance_term / t;
    }
    offline.ratio_bound = z_term / (1.0 + z_term) + distance_term / t;
    offline.satisfied =
        offline.average_ap_loss <=
        std::min(offline.harmonic_bound, offline.ratio_bound) + kBoundSlack;
    report.offline = offline;
  }
  return report;
}

}  // namespace ranklosslab
