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

#include "ranklosslab/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ranklosslab/ap_gradient.h"

namespace ranklosslab {
namespace {

constexpr double kAbsoluteFloor = 1e-12;
constexpr double kPruneTolerance = 1e-12;
constexpr std::size_t kMaxMessages = 10;

double RelativeError(double a, double b) {
  const double diff = std::abs(a - b);
  if (diff <= kAbsoluteFloor) return 0.0;
  return diff / std::max(std::abs(a), std::abs(b));
}

// Largest relative error over the loss and every signal entry.
double MaxRelativeError(const GradResult& a, const GradResult& b) {
  double err = RelativeError(a.loss, b.loss);
  if (a.grad.size() != b.grad.size()) return INFINITY;
  for (std::size_t k = 0; k < a.grad.size(); ++k) {
    err = std::max(err, RelativeError(a.grad[k], b.grad[k]));
  }
  return err;
}

double MaxAbsoluteDiff(const GradResult& a, const GradResult& b) {
  double diff = std::abs(a.loss - b.loss);
  for (std::size_t k = 0; k < a.grad.size(); ++k) {
    diff = std::max(diff, std::abs(a.grad[k] - b.grad[k]));
  }
  return diff;
}

}  // namespace

bool NearlyEqual(double a, double b, double rel_tol) {
  const double diff = std::abs(a - b);
  return diff <= kAbsoluteFloor ||
         diff <= rel_tol * std::max(std::abs(a), std::abs(b));
}

SampleBatch RandomBatch(Rng& rng, int max_n, int max_positives, bool ties) {
  const int n = static_cast<int>(rng.UniformInt(2, std::max(2, max_n)));
  const int positives = static_cast<int>(
      rng.UniformInt(1, std::max(1, std::min(max_positives, n - 1))));
  SampleBatch batch;
  batch.labels.assign(static_cast<std::size_t>(n), kNegativeLabel);
  std::fill_n(batch.labels.begin(), positives, kPositiveLabel);
  for (int k = positives; k < n; ++k) {
    if (rng.Bernoulli(0.1)) batch.labels[static_cast<std::size_t>(k)] = kIgnoredLabel;
  }
  for (int k = n - 1; k > 0; --k) {
    std::swap(batch.labels[static_cast<std::size_t>(k)],
              batch.labels[static_cast<std::size_t>(rng.UniformInt(0, k))]);
  }
  for (int k = 0; k < n; ++k) {
    double score = rng.Normal(0.0, 2.0);
    if (ties && k > 0 && rng.Bernoulli(0.2)) {
      score = batch.scores[static_cast<std::size_t>(rng.UniformInt(0, k - 1))];
    } else if (ties && rng.Bernoulli(0.3)) {
      score = std::round(score * 4.0) / 4.0;
    }
    batch.scores.push_back(score);
  }
  batch.group_ids.assign(static_cast<std::size_t>(n), 0);
  return batch;
}

StepConfig RandomStepConfig(Rng& rng, int index) {
  switch (index % 3) {
    case 0:
      return StepConfig::Heaviside();
    case 1:
      return StepConfig::Piecewise(rng.Uniform(0.05, 2.0));
    default:
      return StepConfig::Sigmoid(rng.Uniform(0.1, 2.0));
  }
}

GradcheckReport RunGradcheck(const GradcheckOptions& opts) {
  GradcheckReport report;
  Rng rng(opts.seed);
  auto fail = [&](int instance, const StepConfig& cfg, const std::string& what,
                  double value) {
    ++report.failures;
    if (report.messages.size() < kMaxMessages) {
      std::ostringstream msg;
      msg << "instance " << instance << " (" << StepKindName(cfg.kind)
          << "): " << what << " = " << value;
      report.messages.push_back(msg.str());
    }
  };

  for (int n = 0; n < opts.instances; ++n) {
    const SampleBatch batch =
        RandomBatch(rng, opts.max_n, opts.max_positives, n % 2 == 0);
    const StepConfig cfg = RandomStepConfig(rng, n);

    GradOptions plain;
    plain.num_threads = static_cast<int>(rng.UniformInt(1, 4));
    GradOptions plain_unpruned = plain;
    plain_unpruned.prune_trivial_negatives = false;
    GradOptions interp;
    interp.interpolated = true;
    GradOptions interp_unpruned = interp;
    interp_unpruned.prune_trivial_negatives = false;

    const GradResult brute = GradBruteForce(batch, cfg);
    const GradResult fast = GradAccelerated(batch, cfg, plain);
    const GradResult fast_full = GradAccelerated(batch, cfg, plain_unpruned);
    const GradResult direct = GradInterpolatedDirect(batch, cfg);
    const GradResult fast_interp = GradAccelerated(batch, cfg, interp);
    const GradResult fast_interp_full =
        GradAccelerated(batch, cfg, interp_unpruned);

    const double err_plain = MaxRelativeError(fast, brute);
    const double err_interp = MaxRelativeError(fast_interp, direct);
    const double prune_diff = std::max(MaxAbsoluteDiff(fast, fast_full),
                                       MaxAbsoluteDiff(fast_interp, fast_interp_full));
    report.max_err_plain = std::max(report.max_err_plain, err_plain);
    report.max_err_interpolated = std::max(report.max_err_interpolated, err_interp);
    report.max_prune_diff = std::max(report.max_prune_diff, prune_diff);
    ++report.instances;

    if (err_plain > opts.rel_tol) {
      fail(n, cfg, "accelerated vs brute force relative error", err_plain);
    } else if (err_interp > opts.rel_tol) {
      fail(n, cfg, "interpolated accelerated vs direct relative error",
           err_interp);
    } else if (prune_diff > kPruneTolerance) {
      fail(n, cfg, "pruned vs unpruned difference", prune_diff);
    }
  }
  return report;
}

}  // namespace ranklosslab
