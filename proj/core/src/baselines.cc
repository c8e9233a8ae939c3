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

#include "ranklosslab/baselines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ranklosslab {
namespace {

double Logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

void SmoothedApConfig::Validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("SmoothedApConfig: k must be > 0, got " +
                                std::to_string(k));
  }
  if (log_space && (!(epsilon > 0.0) || !std::isfinite(epsilon))) {
    throw std::invalid_argument(
        "SmoothedApConfig: epsilon must be > 0 in log space, got " +
        std::to_string(epsilon));
  }
}

LossAndGradient SmoothedApLossAndGrad(const SampleBatch& batch,
                                      const SmoothedApConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  const std::size_t n = batch.size();
  LossAndGradient out;
  out.grad.assign(n, 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return out;

  std::vector<std::size_t> valid;
  valid.reserve(parts.positives.size() + parts.negatives.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (batch.labels[i] != kIgnoredLabel) valid.push_back(i);
  }

  const double inv_k = 1.0 / cfg.k;
  double total = 0.0;
  for (std::size_t i : parts.positives) {
    const double si = batch.scores[i];
    double positive_sum = 0.0;
    double negative_sum = 0.0;
    for (std::size_t k : valid) {
      if (k == i) continue;
      const double v = Logistic((batch.scores[k] - si) * inv_k);
      (batch.labels[k] == kNegativeLabel ? negative_sum : positive_sum) += v;
    }
    const double denominator = 1.0 + positive_sum + negative_sum;
    const double inv_d2 = 1.0 / (denominator * denominator);
    total += negative_sum / denominator;
    // d term_i / d x_ik; x_ik = s_k - s_i moves s_k up and s_i down.
    for (std::size_t k : valid) {
      if (k == i) continue;
      const double z = (batch.scores[k] - si) * inv_k;
      const double slope = Logistic(z) * Logistic(-z) * inv_k;
      const double coeff = batch.labels[k] == kNegativeLabel
                               ? slope * (1.0 + positive_sum) * inv_d2
                               : -slope * negative_sum * inv_d2;
      out.grad[k] += coeff;
      out.grad[i] -= coeff;
    }
  }
  const double inv_p = 1.0 / static_cast<double>(parts.positives.size());
  const double smooth = total * inv_p;
  for (double& g : out.grad) g *= inv_p;

  if (!cfg.log_space) {
    out.loss = smooth;
    return out;
  }
  const double shifted_ap = 1.0 - smooth + cfg.epsilon;
  out.loss = -std::log(shifted_ap);
  for (double& g : out.grad) g /= shifted_ap;
  return out;
}

LossAndGradient AucGrad(const SampleBatch& batch, const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  LossAndGradient out;
  out.grad.assign(batch.size(), 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return out;

  const double inv_n = 1.0 / static_cast<double>(parts.negatives.size());
  VisitStep(cfg, [&](auto step) {
    for (std::size_t i : parts.positives) {
      const double si = batch.scores[i];
      for (std::size_t j : parts.negatives) {
        const double l = step(batch.scores[j] - si) * inv_n;
        out.grad[i] -= l;
        out.grad[j] += l;
        out.loss += l;
      }
    }
  });
  const double inv_p = 1.0 / static_cast<double>(parts.positives.size());
  out.loss *= inv_p;
  for (double& g : out.grad) g *= inv_p;
  return out;
}

GradientVector SoftmaxErrorDriven(std::span<const double> logits,
                                  std::size_t label) {
  if (label >= logits.size()) {
    throw std::invalid_argument("SoftmaxErrorDriven: label " +
                                std::to_string(label) + " out of range for " +
                                std::to_string(logits.size()) + " classes");
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  GradientVector g(logits.size());
  double norm = 0.0;
  for (std::size_t c = 0; c < logits.size(); ++c) {
    g[c] = std::exp(logits[c] - max_logit);
    norm += g[c];
  }
  for (std::size_t c = 0; c < logits.size(); ++c) {
    g[c] /= norm;
    if (c == label) g[c] -= 1.0;
  }
  return g;
}

std::array<double, 2> HingeErrorDriven(double x, int label) {
  if (label != 0 && label != 1) {
    throw std::invalid_argument("HingeErrorDriven: label must be 0 or 1, got " +
                                std::to_string(label));
  }
  const HeavisideStep step;
  const std::array<double, 2> activation = {step(-x - 1.0), step(x - 1.0)};
  std::array<double, 2> g = {0.0, 0.0};
  g[label] = activation[label] - 1.0;
  return g;
}

}  // namespace ranklosslab
