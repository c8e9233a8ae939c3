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

#include "ranklosslab/ap_gradient.h"

#include <algorithm>
#include <thread>
#include <vector>

namespace ranklosslab {
namespace {

// Positives per work unit of the non-interpolated path. Fixed, so the
// reduction order does not depend on the thread count.
constexpr std::size_t kPositivesPerChunk = 32;

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

void Normalize(GradResult& result, std::size_t num_positives, bool grad_too) {
  const double inv = 1.0 / static_cast<double>(num_positives);
  result.loss *= inv;
  if (!grad_too) return;
  for (double& g : result.grad) g *= inv;
}

// Shared per-positive work of the accelerated path: fills `row` with L_ij over
// the kept negatives and returns their sum.
template <typename Step>
double FillRow(double si, std::size_t self,
               const std::vector<double>& positive_scores,
               const std::vector<double>& kept_scores, Step step,
               std::vector<double>& row) {
  double denominator = 1.0;
  for (std::size_t k = 0; k < positive_scores.size(); ++k) {
    if (k == self) continue;
    denominator += step(positive_scores[k] - si);
  }
  for (std::size_t t = 0; t < kept_scores.size(); ++t) {
    row[t] = step(kept_scores[t] - si);
    denominator += row[t];
  }
  double row_sum = 0.0;
  for (std::size_t t = 0; t < kept_scores.size(); ++t) {
    row[t] /= denominator;
    row_sum += row[t];
  }
  return row_sum;
}

}  // namespace

GradResult GradBruteForce(const SampleBatch& batch, const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  const std::size_t n = batch.size();
  GradResult result;
  result.grad.assign(n, 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return result;

  VisitStep(cfg, [&](auto step) {
    std::vector<double> denominator(n, 0.0);
    for (std::size_t i : parts.positives) {
      denominator[i] = RowDenominator(batch, i, step);
    }
    // g_a = sum_b L_ba y_ba - sum_b L_ab y_ab over ordered valid pairs, with
    // y_ab = 1 exactly when a is positive and b negative.
    for (std::size_t a = 0; a < n; ++a) {
      if (batch.labels[a] == kIgnoredLabel) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || batch.labels[b] == kIgnoredLabel) continue;
        if (batch.labels[a] != kPositiveLabel ||
            batch.labels[b] != kNegativeLabel) {
          continue;
        }
        const double l_ab =
            step(batch.scores[b] - batch.scores[a]) / denominator[a];
        result.grad[a] -= l_ab;
        result.grad[b] += l_ab;
        result.loss += l_ab;
      }
    }
  });
  Normalize(result, parts.positives.size(), true);
  return result;
}

GradResult GradInterpolatedDirect(const SampleBatch& batch,
                                  const StepConfig& cfg) {
  batch.Validate();
  cfg.Validate();
  const std::size_t n = batch.size();
  GradResult result;
  result.grad.assign(n, 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return result;

  const std::size_t num_pos = parts.positives.size();
  const std::size_t num_neg = parts.negatives.size();
  // Full |P| x |N| table of primary terms, rows in partition order.
  std::vector<double> terms(num_pos * num_neg);
  std::vector<double> precision(num_pos);
  VisitStep(cfg, [&](auto step) {
    for (std::size_t p = 0; p < num_pos; ++p) {
      const std::size_t i = parts.positives[p];
      const double denominator = RowDenominator(batch, i, step);
      double row_sum = 0.0;
      for (std::size_t q = 0; q < num_neg; ++q) {
        const double l = step(batch.scores[parts.negatives[q]] -
                              batch.scores[i]) /
                         denominator;
        terms[p * num_neg + q] = l;
        row_sum += l;
      }
      precision[p] = 1.0 - row_sum;
    }
  });

  std::vector<std::size_t> rows(num_pos);
  for (std::size_t p = 0; p < num_pos; ++p) rows[p] = p;
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    return batch.scores[parts.positives[a]] < batch.scores[parts.positives[b]];
  });
  // Interpolated precision: prefix maximum over ascending scores.
  std::vector<double> interpolated(num_pos);
  double running = 0.0;
  for (std::size_t p : rows) {
    running = std::max(running, precision[p]);
    interpolated[p] = running;
  }

  for (std::size_t p = 0; p < num_pos; ++p) {
    const double raw_loss = 1.0 - precision[p];
    const double scale = interpolated[p] > precision[p]
                             ? (1.0 - interpolated[p]) / raw_loss
                             : 1.0;
    const std::size_t i = parts.positives[p];
    for (std::size_t q = 0; q < num_neg; ++q) {
      const double l = terms[p * num_neg + q] * scale;
      result.grad[i] -= l;
      result.grad[parts.negatives[q]] += l;
      result.loss += l;
    }
  }
  Normalize(result, num_pos, true);
  return result;
}

GradResult GradAccelerated(const SampleBatch& batch, const StepConfig& cfg,
                           const GradOptions& opts) {
  batch.Validate();
  cfg.Validate();
  const std::size_t n = batch.size();
  GradResult result;
  result.grad.assign(n, 0.0);
  const PartitionedIndices parts = PartitionBatch(batch);
  if (parts.positives.empty() || parts.negatives.empty()) return result;

  double s_min = batch.scores[parts.positives.front()];
  for (std::size_t i : parts.positives) s_min = std::min(s_min, batch.scores[i]);

  // Non-trivial negatives. The piecewise test reuses the subtraction the
  // activation sees, so a pruned pair is exactly zero for every positive.
  std::vector<std::size_t> kept;
  kept.reserve(parts.negatives.size());
  const bool prune = opts.prune_trivial_negatives && cfg.HasBoundedSupport();
  for (std::size_t j : parts.negatives) {
    const double sj = batch.scores[j];
    bool keep = true;
    if (prune) {
      keep = cfg.kind == StepKind::kHeaviside ? sj >= s_min
                                              : sj - s_min > -cfg.delta;
    }
    if (keep) kept.push_back(j);
  }
  result.pruned_negative_count = parts.negatives.size() - kept.size();

  std::vector<double> kept_scores(kept.size());
  for (std::size_t t = 0; t < kept.size(); ++t) {
    kept_scores[t] = batch.scores[kept[t]];
  }
  std::vector<double> positive_scores(parts.positives.size());
  for (std::size_t p = 0; p < parts.positives.size(); ++p) {
    positive_scores[p] = batch.scores[parts.positives[p]];
  }
  // Rows in ascending score order, as positions into parts.positives.
  std::vector<std::size_t> order(parts.positives.size());
  for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return positive_scores[a] < positive_scores[b];
                   });

  std::vector<double> kept_grad(kept.size(), 0.0);

  VisitStep(cfg, [&](auto step) {
    if (opts.interpolated) {
      std::vector<double> row(kept.size());
      double max_precision = 0.0;
      for (std::size_t p : order) {
        const double row_sum = FillRow(positive_scores[p], p, positive_scores,
                                       kept_scores, step, row);
        const double precision = 1.0 - row_sum;
        double scale = 1.0;
        if (precision >= max_precision) {
          max_precision = precision;
        } else {
          scale = (1.0 - max_precision) / (1.0 - precision);
        }
        double scaled_sum = 0.0;
        for (std::size_t t = 0; t < kept.size(); ++t) {
          const double l = row[t] * scale;
          kept_grad[t] += l;
          scaled_sum += l;
        }
        result.grad[parts.positives[p]] = -scaled_sum;
        result.loss += scaled_sum;
      }
      return;
    }

    const std::size_t num_chunks =
        (order.size() + kPositivesPerChunk - 1) / kPositivesPerChunk;
    const std::size_t workers = static_cast<std::size_t>(
        std::clamp<std::size_t>(opts.num_threads > 0 ? opts.num_threads : 1, 1,
                                num_chunks));
    std::vector<std::vector<double>> partial(workers,
                                             std::vector<double>(kept.size()));
    std::vector<std::vector<double>> rows(workers,
                                          std::vector<double>(kept.size()));
    std::vector<double> partial_loss(workers);

    auto run_chunk = [&](std::size_t chunk, std::size_t slot) {
      std::vector<double>& acc = partial[slot];
      std::fill(acc.begin(), acc.end(), 0.0);
      double loss = 0.0;
      const std::size_t end =
          std::min(order.size(), (chunk + 1) * kPositivesPerChunk);
      for (std::size_t r = chunk * kPositivesPerChunk; r < end; ++r) {
        const std::size_t p = order[r];
        const double row_sum = FillRow(positive_scores[p], p, positive_scores,
                                       kept_scores, step, rows[slot]);
        for (std::size_t t = 0; t < kept.size(); ++t) acc[t] += rows[slot][t];
        result.grad[parts.positives[p]] = -row_sum;
        loss += row_sum;
      }
      partial_loss[slot] = loss;
    };

    for (std::size_t wave = 0; wave < num_chunks; wave += workers) {
      const std::size_t in_wave = std::min(workers, num_chunks - wave);
      if (in_wave == 1) {
        run_chunk(wave, 0);
      } else {
        std::vector<std::jthread> threads;
        threads.reserve(in_wave);
        for (std::size_t slot = 0; slot < in_wave; ++slot) {
          threads.emplace_back(run_chunk, wave + slot, slot);
        }
      }
      // Reduce in chunk order.
      for (std::size_t slot = 0; slot < in_wave; ++slot) {
        for (std::size_t t = 0; t < kept.size(); ++t) {
          kept_grad[t] += partial[slot][t];
        }
        result.loss += partial_loss[slot];
      }
    }
  });

  for (std::size_t t = 0; t < kept.size(); ++t) {
    result.grad[kept[t]] = kept_grad[t];
  }
  Normalize(result, parts.positives.size(), opts.normalize_by_positives);
  return result;
}

SampleBatch MinibatchAggregate(std::span<const SampleBatch> batches) {
  SampleBatch out;
  std::size_t total = 0;
  for (const SampleBatch& b : batches) total += b.size();
  out.scores.reserve(total);
  out.labels.reserve(total);
  out.group_ids.reserve(total);
  for (std::size_t g = 0; g < batches.size(); ++g) {
    const SampleBatch& b = batches[g];
    b.Validate();
    out.scores.insert(out.scores.end(), b.scores.begin(), b.scores.end());
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    out.group_ids.insert(out.group_ids.end(), b.size(), static_cast<int>(g));
  }
  return out;
}

}  // namespace ranklosslab
