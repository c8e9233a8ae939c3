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

#include "ranklosslab/synthetic.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ranklosslab/random.h"

namespace ranklosslab {
namespace {

Eigen::VectorXd RandomUnit(Rng& rng, int dim) {
  Eigen::VectorXd v(dim);
  do {
    for (int c = 0; c < dim; ++c) v[c] = rng.Normal();
  } while (v.norm() == 0.0);
  return v.normalized();
}

}  // namespace

void SynthConfig::Validate() const {
  if (dim < 1) throw std::invalid_argument("SynthConfig: dim must be >= 1");
  if (positives < 0 || negatives < 0) {
    throw std::invalid_argument(
        "SynthConfig: positives and negatives must be >= 0");
  }
  if (groups < 1) throw std::invalid_argument("SynthConfig: groups must be >= 1");
  if (!std::isfinite(margin)) {
    throw std::invalid_argument("SynthConfig: margin must be finite");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw std::invalid_argument("SynthConfig: noise_sigma must be >= 0");
  }
  if (!score_shift.empty() &&
      score_shift.size() != static_cast<std::size_t>(groups)) {
    throw std::invalid_argument("SynthConfig: score_shift has " +
                                std::to_string(score_shift.size()) +
                                " entries for " + std::to_string(groups) +
                                " groups");
  }
}

SyntheticData Generate(const SynthConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  const int n = cfg.positives + cfg.negatives;

  SyntheticData out;
  out.separating_direction = RandomUnit(rng, cfg.dim);
  const Eigen::VectorXd& u = out.separating_direction;
  out.shift_direction = Eigen::VectorXd::Zero(cfg.dim);
  if (cfg.dim > 1) {
    Eigen::VectorXd v = RandomUnit(rng, cfg.dim);
    v -= v.dot(u) * u;
    // Degenerate draws are vanishingly rare; fall back to a basis vector.
    if (v.norm() < 1e-8) {
      v = Eigen::VectorXd::Unit(cfg.dim, std::abs(u[0]) < 0.9 ? 0 : 1);
      v -= v.dot(u) * u;
    }
    out.shift_direction = v.normalized();
  }

  RankingDataset& data = out.dataset;
  data.features.resize(n, cfg.dim);
  data.labels.resize(n);
  data.group_ids.resize(n);
  for (int row = 0; row < n; ++row) {
    const bool positive = row < cfg.positives;
    Eigen::VectorXd f(cfg.dim);
    for (int c = 0; c < cfg.dim; ++c) f[c] = rng.Normal();
    const double along = cfg.margin / 2.0 + std::abs(rng.Normal());
    f += ((positive ? along : -along) - f.dot(u)) * u;
    const int group = row % cfg.groups;
    if (!cfg.score_shift.empty()) {
      f += cfg.score_shift[group] * out.shift_direction;
    }
    if (cfg.noise_sigma > 0.0) {
      for (int c = 0; c < cfg.dim; ++c) f[c] += cfg.noise_sigma * rng.Normal();
    }
    data.features.row(row) = f.transpose();
    data.labels[row] = positive ? kPositiveLabel : kNegativeLabel;
    data.group_ids[row] = group;
  }
  if (cfg.margin >= 0.0 && cfg.noise_sigma == 0.0) {
    data.margin = cfg.margin;
    data.certificate = u;
  }
  return out;
}

}  // namespace ranklosslab
