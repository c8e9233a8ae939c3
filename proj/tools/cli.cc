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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.h"
#include "ranklosslab/csv.h"
#include "ranklosslab/experiment.h"
#include "ranklosslab/gradcheck.h"
#include "ranklosslab/parallel.h"

namespace ranklosslab::tools {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "csv";
  bool omit_timing = false;
};

fs::path OutDir(const Flags& flags, const std::string& fallback) {
  return flags.out_dir.empty() ? fs::path(fallback) : fs::path(flags.out_dir);
}

ExperimentConfig LoadOrDefault(const Flags& flags, const ExperimentSpec& base) {
  ExperimentConfig config;
  if (flags.config.empty()) {
    config.spec = base;
    config.spec.Validate();
  } else {
    config = LoadExperimentConfig(flags.config, base);
  }
  if (flags.seed) config.spec.synth.seed = *flags.seed;
  return config;
}

std::string TraceFileName(const ExperimentSpec& spec, std::size_t entry) {
  const std::string kind(LossKindName(spec.train[entry].loss_kind));
  int same_kind = 0;
  for (const TrainConfig& cfg : spec.train) {
    same_kind += cfg.loss_kind == spec.train[entry].loss_kind ? 1 : 0;
  }
  if (same_kind > 1) {
    return spec.name + "_" + std::to_string(entry) + "_" + kind + ".csv";
  }
  return spec.name + "_" + kind + ".csv";
}

int Gradcheck(const Flags& flags, std::ostream& out, std::ostream& err) {
  GradcheckOptions opts;
  opts.seed = flags.seed.value_or(0);
  const GradcheckReport report = RunGradcheck(opts);
  out << "gradcheck: instances=" << report.instances
      << " failures=" << report.failures
      << " max_rel_err_plain=" << FormatDouble(report.max_err_plain)
      << " max_rel_err_interpolated="
      << FormatDouble(report.max_err_interpolated)
      << " max_prune_diff=" << FormatDouble(report.max_prune_diff) << '\n';
  for (const std::string& msg : report.messages) err << msg << '\n';
  return report.Passed() ? kExitOk : kExitValidation;
}

int Train(const Flags& flags, std::ostream& out) {
  ExperimentSpec base;
  base.train = {TrainConfig{}};
  const ExperimentSpec spec = LoadOrDefault(flags, base).spec;
  const ExperimentResult result = RunExperiment(spec, MaxWorkerThreads());
  const fs::path dir = OutDir(flags, spec.output_path);

  const std::size_t entries = spec.train.size();
  for (std::size_t e = 0; e < entries; ++e) {
    std::vector<TrainTrace> traces;
    for (std::size_t k = e; k < result.runs.size(); k += entries) {
      traces.push_back(result.runs[k].trace);
    }
    std::ostringstream csv;
    WriteTraceCsv(csv, traces, !flags.omit_timing);
    WriteTextFile(dir / TraceFileName(spec, e), csv.str());
  }
  std::ostringstream csv;
  WriteResultsCsv(csv, result.rows, !flags.omit_timing);
  WriteTextFile(dir / (spec.name + "_results.csv"), csv.str());

  for (const ResultRow& row : result.rows) {
    out << LossKindName(row.loss_kind) << " repetition=" << row.repetition
        << " iterations=" << row.iterations
        << " final_ap_loss=" << FormatDouble(row.final_ap_loss)
        << " converged=" << (row.converged ? "yes" : "no") << '\n';
  }
  out << "wrote " << entries + 1 << " files to " << dir.string() << '\n';
  return kExitOk;
}

int Counterexample(const Flags& flags, std::ostream& out) {
  const CounterexampleResult result = RunCounterexample();
  const fs::path dir = OutDir(flags, "out");
  for (const TrainResult* run : {&result.error_driven, &result.smoothed}) {
    std::ostringstream csv;
    WriteTraceCsv(csv, std::span(&run->trace, 1), !flags.omit_timing);
    const std::string name =
        "counterexample_" + std::string(LossKindName(run->trace.loss_kind)) +
        ".csv";
    WriteTextFile(dir / name, csv.str());
  }

  const auto print = [&out](const TrainResult& run) {
    const auto& records = run.trace.records;
    out << LossKindName(run.trace.loss_kind) << ": iterations=" << records.size()
        << " theta=(" << FormatDouble(run.model.theta[0]) << ", "
        << FormatDouble(run.model.theta[1]) << ")"
        << " final_ap_loss=" << FormatDouble(run.final_ap_loss) << '\n';
  };
  out << "error-driven trajectory:\n";
  for (const TraceRecord& r : result.error_driven.trace.records) {
    out << "  iter " << r.iter << " ap_loss=" << FormatDouble(r.ap_loss) << '\n';
  }
  print(result.error_driven);
  print(result.smoothed);
  out << "smoothed_ap_gd: final_smooth_loss="
      << FormatDouble(result.final_smooth_loss)
      << " ap_loss_range=[" << FormatDouble(result.smoothed_min_ap_loss) << ", "
      << FormatDouble(result.smoothed_max_ap_loss) << "]\n";
  out << "wrote 2 traces to " << dir.string() << '\n';
  return kExitOk;
}

int Bounds(const Flags& flags, std::ostream& out) {
  BoundSuiteOptions opts;
  opts.seed = flags.seed.value_or(0);
  const BoundSuiteResult result = RunBoundSuite(opts);
  const fs::path dir = OutDir(flags, "out");
  std::ostringstream csv;
  WriteBoundsCsv(csv, result.rows);
  WriteTextFile(dir / "bounds.csv", csv.str());

  int satisfied = 0;
  for (const BoundSuiteRow& row : result.rows) {
    satisfied += row.report.satisfied ? 1 : 0;
  }
  out << "bounds: satisfied " << satisfied << "/" << result.rows.size()
      << " comparators; surrogate domination failures "
      << result.surrogate_failures << "/" << result.surrogate_checks
      << " (min slack " << FormatDouble(result.min_surrogate_slack) << ")\n";
  return result.AllSatisfied() ? kExitOk : kExitValidation;
}

int Bench(const Flags& flags, std::ostream& out) {
  const ExperimentSpec spec =
      LoadOrDefault(flags, DefaultAccelerationSpec()).spec;
  const AccelerationResult result = BenchAcceleration(spec);
  const ScalingResult scaling = MeasureNegativeScaling(
      20, {2000, 4000, 8000, 16000, 32000}, 7, spec.synth.seed);
  const fs::path dir = OutDir(flags, spec.output_path);

  std::ostringstream timing;
  WriteTimingCsv(timing, result.buckets);
  WriteTextFile(dir / "timing.csv", timing.str());
  std::ostringstream scale;
  WriteScalingCsv(scale, scaling);
  WriteTextFile(dir / "scaling.csv", scale.str());

  const double first = MedianPrunedNs(result, 0.0, 0.1);
  const double last = MedianPrunedNs(result, 0.9, 1.0);
  out << "bench: median pruned ns first 10% " << FormatDouble(first)
      << ", last 10% " << FormatDouble(last) << "; max prune diff "
      << FormatDouble(result.max_prune_diff) << "; scaling exponent in |N| "
      << FormatDouble(scaling.exponent) << '\n';
  return kExitOk;
}

int Sweep(const Flags& flags, std::ostream& out) {
  SweepSpec sweep = DefaultSweepSpec();
  const ExperimentConfig config = LoadOrDefault(flags, sweep.base);
  sweep.base = config.spec;
  if (config.negatives) sweep.negatives = *config.negatives;
  const std::vector<ResultRow> rows =
      RunImbalanceSweep(sweep, MaxWorkerThreads());
  const fs::path dir = OutDir(flags, sweep.base.output_path);
  std::ostringstream csv;
  WriteResultsCsv(csv, rows, !flags.omit_timing);
  WriteTextFile(dir / (sweep.base.name + ".csv"), csv.str());

  std::vector<LossKind> kinds;
  for (const TrainConfig& cfg : sweep.base.train) {
    if (std::find(kinds.begin(), kinds.end(), cfg.loss_kind) == kinds.end()) {
      kinds.push_back(cfg.loss_kind);
    }
  }
  for (LossKind kind : kinds) {
    const std::vector<double> means = MeanFinalLossByNegatives(rows, kind);
    out << LossKindName(kind) << " mean final ap_loss by negatives:";
    for (std::size_t k = 0; k < means.size(); ++k) {
      out << ' ' << sweep.negatives[k] << '=' << FormatDouble(means[k]);
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Average-precision ranking losses on linear models",
               "ranklosslab"};
  app.require_subcommand(1);
  Flags flags;

  using Handler = std::function<int()>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help,
                 bool takes_config, Handler handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_config) {
      sub->add_option("--config", flags.config, "Experiment config (JSON)");
    }
    sub->add_option("--seed", flags.seed, "Base random seed");
    sub->add_option("--out", flags.out_dir, "Output directory");
    sub->add_option("--format", flags.format, "Output format (csv)");
    sub->add_flag("--omit-timing", flags.omit_timing,
                  "Write wall-clock columns as 0");
    commands.emplace_back(sub, std::move(handler));
  };
  add("gradcheck", "Accelerated AP signal versus reference implementations",
      false, [&] { return Gradcheck(flags, out, err); });
  add("train", "Train every configured loss on one synthetic experiment", true,
      [&] { return Train(flags, out); });
  add("counterexample",
      "Smoothed-AP gradient descent stalls where error-driven training "
      "converges",
      false, [&] { return Counterexample(flags, out); });
  add("bounds", "Check the accumulated-loss bound of the inseparable update",
      false, [&] { return Bounds(flags, out); });
  add("bench", "Loss computation time with and without pruning", true,
      [&] { return Bench(flags, out); });
  add("sweep", "Final AP-loss across imbalance ratios", true,
      [&] { return Sweep(flags, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (flags.format != "csv") {
      throw std::invalid_argument("unsupported --format '" + flags.format +
                                  "' (only csv)");
    }
    for (const auto& [sub, handler] : commands) {
      if (sub->parsed()) return handler();
    }
    err << app.help();
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace ranklosslab::tools
