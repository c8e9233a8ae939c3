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

// Seedable random source with a fixed algorithm so that generated data and
// traces reproduce across platforms and standard libraries.
//
// Engine: std::mt19937_64 (bit sequence fixed by the C++ standard).
// Uniform: top 53 bits of one draw scaled by 2^-53, in [0, 1).
// Normal: Box-Muller on two uniforms; the second variate is cached.
// Integers: rejection sampling, so results do not depend on
// std::uniform_int_distribution.

#ifndef RANKLOSSLAB_RANDOM_H_
#define RANKLOSSLAB_RANDOM_H_

#include <cstdint>
#include <optional>
#include <random>

namespace ranklosslab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }
  // Uniform integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

// SplitMix64 finalizer; derives independent stream seeds from a base seed.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_RANDOM_H_
