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

#include "ranklosslab/step_function.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranklosslab {

void StepConfig::Validate() const {
  switch (kind) {
    case StepKind::kHeaviside:
      return;
    case StepKind::kPiecewise:
      if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument(
            "StepConfig: piecewise step needs delta > 0, got " +
            std::to_string(delta));
      }
      return;
    case StepKind::kSigmoid:
      if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument(
            "StepConfig: sigmoid step needs k > 0, got " + std::to_string(k));
      }
      return;
  }
  throw std::invalid_argument("StepConfig: unknown step kind");
}

std::string_view StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kHeaviside:
      return "heaviside";
    case StepKind::kPiecewise:
      return "piecewise";
    case StepKind::kSigmoid:
      return "sigmoid";
  }
  return "unknown";
}

std::optional<StepKind> ParseStepKind(std::string_view name) {
  if (name == "heaviside") return StepKind::kHeaviside;
  if (name == "piecewise") return StepKind::kPiecewise;
  if (name == "sigmoid") return StepKind::kSigmoid;
  return std::nullopt;
}

double StepEval(double x, const StepConfig& cfg) {
  return VisitStep(cfg, [x](auto step) { return step(x); });
}

double QIntegral(double x, double delta) {
  if (x <= -delta) return 0.0;
  if (x >= delta) return x;
  const double shifted = x + delta;
  return shifted * shifted / (4.0 * delta);
}

}  // namespace ranklosslab
