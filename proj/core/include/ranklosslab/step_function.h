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

// Pairwise activations applied to score differences x = s_j - s_i.
//
//   heaviside  H(x) = 1 for x >= 0, else 0.
//   piecewise  f(x) = 0 below -delta, x / (2 delta) + 1/2 on [-delta, delta],
//              1 above delta.
//   sigmoid    e^{x/k} / (1 + e^{x/k}).
//
// QIntegral is the primitive of the piecewise step, used by the inseparable
// case analysis as a convex surrogate of the Heaviside step.

#ifndef RANKLOSSLAB_STEP_FUNCTION_H_
#define RANKLOSSLAB_STEP_FUNCTION_H_

#include <cmath>
#include <optional>
#include <string_view>

namespace ranklosslab {

enum class StepKind { kHeaviside, kPiecewise, kSigmoid };

struct StepConfig {
  StepKind kind = StepKind::kPiecewise;
  // Half-width of the piecewise ramp.
  double delta = 1.0;
  // Slope scale of the sigmoid.
  double k = 0.5;

  static StepConfig Heaviside() { return {StepKind::kHeaviside, 1.0, 0.5}; }
  static StepConfig Piecewise(double delta = 1.0) {
    return {StepKind::kPiecewise, delta, 0.5};
  }
  static StepConfig Sigmoid(double k = 0.5) {
    return {StepKind::kSigmoid, 1.0, k};
  }

  // Throws std::invalid_argument when the parameter used by `kind` is not a
  // positive finite number.
  void Validate() const;

  // True when the activation is exactly zero below some finite threshold.
  bool HasBoundedSupport() const { return kind != StepKind::kSigmoid; }
};

std::string_view StepKindName(StepKind kind);
std::optional<StepKind> ParseStepKind(std::string_view name);

struct HeavisideStep {
  double operator()(double x) const { return x >= 0.0 ? 1.0 : 0.0; }
};

struct PiecewiseStep {
  double delta;
  double operator()(double x) const {
    if (x < -delta) return 0.0;
    if (x > delta) return 1.0;
    return x / (2.0 * delta) + 0.5;
  }
};

struct SigmoidStep {
  double k;
  double operator()(double x) const {
    const double z = x / k;
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
  }
};

// Calls `fn` with the concrete step functor selected by `cfg`, so hot loops
// are instantiated once per kind instead of branching per pair.
template <typename Fn>
decltype(auto) VisitStep(const StepConfig& cfg, Fn&& fn) {
  switch (cfg.kind) {
    case StepKind::kHeaviside:
      return fn(HeavisideStep{});
    case StepKind::kPiecewise:
      return fn(PiecewiseStep{cfg.delta});
    case StepKind::kSigmoid:
      break;
  }
  return fn(SigmoidStep{cfg.k});
}

double StepEval(double x, const StepConfig& cfg);

// Q(x) = integral of the piecewise step from -infinity to x:
// 0 below -delta, (x + delta)^2 / (4 delta) on [-delta, delta], x above.
double QIntegral(double x, double delta);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_STEP_FUNCTION_H_
