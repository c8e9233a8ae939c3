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

#include "config.h"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ranklosslab/csv.h"

namespace ranklosslab::tools {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config: " + where + ": " + what);
}

void RequireObject(const json& value, const std::string& where) {
  if (!value.is_object()) Fail(where, "expected an object");
}

int AsInt(const json& value, const std::string& where) {
  if (!value.is_number_integer()) Fail(where, "expected an integer");
  const auto v = value.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) Fail(where, "integer out of range");
  return static_cast<int>(v);
}

std::uint64_t AsSeed(const json& value, const std::string& where) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) Fail(where, "expected a non-negative integer");
  Fail(where, "expected an integer");
}

double AsDouble(const json& value, const std::string& where) {
  if (!value.is_number()) Fail(where, "expected a number");
  return value.get<double>();
}

bool AsBool(const json& value, const std::string& where) {
  if (!value.is_boolean()) Fail(where, "expected true or false");
  return value.get<bool>();
}

std::string AsString(const json& value, const std::string& where) {
  if (!value.is_string()) Fail(where, "expected a string");
  return value.get<std::string>();
}

std::vector<double> AsDoubles(const json& value, const std::string& where) {
  if (!value.is_array()) Fail(where, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    out.push_back(AsDouble(value[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<int> AsInts(const json& value, const std::string& where) {
  if (!value.is_array()) Fail(where, "expected a list of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    out.push_back(AsInt(value[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

void ParseSynth(const json& section, SynthConfig& synth) {
  RequireObject(section, "synth");
  for (const auto& [key, value] : section.items()) {
    const std::string where = "synth." + key;
    if (key == "dim") {
      synth.dim = AsInt(value, where);
    } else if (key == "positives") {
      synth.positives = AsInt(value, where);
    } else if (key == "negatives") {
      synth.negatives = AsInt(value, where);
    } else if (key == "groups") {
      synth.groups = AsInt(value, where);
    } else if (key == "margin") {
      synth.margin = AsDouble(value, where);
    } else if (key == "noise_sigma") {
      synth.noise_sigma = AsDouble(value, where);
    } else if (key == "seed") {
      synth.seed = AsSeed(value, where);
    } else if (key == "score_shift") {
      synth.score_shift = AsDoubles(value, where);
    } else {
      Fail(where, "unknown key");
    }
  }
}

TrainConfig ParseTrainEntry(const json& entry, const std::string& prefix) {
  RequireObject(entry, prefix);
  TrainConfig cfg;
  std::optional<StepKind> step_kind;
  std::optional<double> delta;
  std::optional<double> sigmoid_k;
  for (const auto& [key, value] : entry.items()) {
    const std::string where = prefix + "." + key;
    if (key == "loss_kind") {
      const auto kind = ParseLossKind(AsString(value, where));
      if (!kind) Fail(where, "unknown loss kind");
      cfg.loss_kind = *kind;
    } else if (key == "step_size") {
      cfg.step_size = AsDouble(value, where);
    } else if (key == "max_iters") {
      cfg.max_iters = AsInt(value, where);
    } else if (key == "step_kind") {
      step_kind = ParseStepKind(AsString(value, where));
      if (!step_kind) Fail(where, "unknown step kind");
    } else if (key == "delta") {
      delta = AsDouble(value, where);
    } else if (key == "sigmoid_k") {
      sigmoid_k = AsDouble(value, where);
    } else if (key == "stop_at_zero_loss") {
      cfg.stop_at_zero_loss = AsBool(value, where);
    } else if (key == "normalize_by_positives") {
      cfg.normalize_by_positives = AsBool(value, where);
    } else if (key == "interpolated") {
      cfg.interpolated = AsBool(value, where);
    } else if (key == "prune_trivial_negatives") {
      cfg.prune_trivial_negatives = AsBool(value, where);
    } else if (key == "smoothed_k") {
      cfg.smoothed.k = AsDouble(value, where);
    } else if (key == "smoothed_log_space") {
      cfg.smoothed.log_space = AsBool(value, where);
    } else if (key == "smoothed_epsilon") {
      cfg.smoothed.epsilon = AsDouble(value, where);
    } else if (key == "batching") {
      const auto batching = ParseBatching(AsString(value, where));
      if (!batching) Fail(where, "expected aggregate or per_group");
      cfg.batching = *batching;
    } else if (key == "seed") {
      cfg.seed = AsSeed(value, where);
    } else if (key == "theta_snapshot_every") {
      cfg.theta_snapshot_every = AsInt(value, where);
    } else {
      Fail(where, "unknown key");
    }
  }
  if (step_kind) cfg.step_cfg.kind = *step_kind;
  if (delta) cfg.step_cfg.delta = *delta;
  if (sigmoid_k) cfg.step_cfg.k = *sigmoid_k;
  return cfg;
}

void ParseRun(const json& section, ExperimentConfig& config) {
  RequireObject(section, "run");
  ExperimentSpec& spec = config.spec;
  for (const auto& [key, value] : section.items()) {
    const std::string where = "run." + key;
    if (key == "name") {
      spec.name = AsString(value, where);
    } else if (key == "repetitions") {
      spec.repetitions = AsInt(value, where);
    } else if (key == "output_path") {
      spec.output_path = AsString(value, where);
    } else if (key == "init_theta") {
      spec.init_theta = AsDoubles(value, where);
    } else if (key == "negatives") {
      config.negatives = AsInts(value, where);
    } else {
      Fail(where, "unknown key");
    }
  }
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const ExperimentSpec& base) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  RequireObject(root, "top level");

  ExperimentConfig config;
  config.spec = base;
  for (const auto& [key, value] : root.items()) {
    if (key == "synth") {
      ParseSynth(value, config.spec.synth);
    } else if (key == "train") {
      config.spec.train.clear();
      if (value.is_array()) {
        for (std::size_t k = 0; k < value.size(); ++k) {
          config.spec.train.push_back(
              ParseTrainEntry(value[k], "train[" + std::to_string(k) + "]"));
        }
      } else {
        config.spec.train.push_back(ParseTrainEntry(value, "train"));
      }
    } else if (key == "run") {
      ParseRun(value, config);
    } else {
      Fail(key, "unknown section (expected synth, train or run)");
    }
  }
  config.spec.Validate();
  if (config.negatives) {
    if (config.negatives->empty()) Fail("run.negatives", "must not be empty");
    for (int n : *config.negatives) {
      if (n < 0) Fail("run.negatives", "counts must be >= 0");
    }
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path,
                                      const ExperimentSpec& base) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(path, "cannot read config file");
  std::ostringstream contents;
  contents << file.rdbuf();
  if (file.bad()) throw IoError(path, "read failed");
  return ParseExperimentConfig(contents.str(), base);
}

}  // namespace ranklosslab::tools
