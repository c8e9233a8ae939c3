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

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "config.h"
#include "ranklosslab/csv.h"

namespace ranklosslab::tools {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun RunTool(std::initializer_list<std::string> args) {
  std::vector<std::string> storage = {"ranklosslab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : storage) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  CliRun run;
  run.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("ranklosslab_cli_" +
             std::string(::testing::UnitTest::GetInstance()
                             ->current_test_info()
                             ->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path WriteConfig(const std::string& text) {
    const fs::path path = root_ / "config.json";
    std::ofstream(path) << text;
    return path;
  }

  fs::path root_;
};

constexpr char kSmallTrain[] = R"({
  "synth": {"dim": 4, "positives": 5, "negatives": 40, "seed": 3},
  "train": [{"loss_kind": "error_driven_ap", "max_iters": 50},
            {"loss_kind": "auc", "max_iters": 20},
            {"loss_kind": "smoothed_ap_gd", "max_iters": 20}],
  "run": {"name": "small", "repetitions": 2}
})";

TEST_F(CliTest, UnknownSubcommandPrintsUsage) {
  const CliRun r = RunTool({"frobnicate"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("gradcheck"), std::string::npos);
  EXPECT_NE(r.err.find("counterexample"), std::string::npos);
  EXPECT_EQ(RunTool({}).code, kExitValidation);
}

TEST_F(CliTest, HelpExitsZero) {
  const CliRun r = RunTool({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

TEST_F(CliTest, MissingConfigIsAnIoErrorNamingThePath) {
  const fs::path missing = root_ / "nope.json";
  for (const char* cmd : {"train", "bench", "sweep"}) {
    const CliRun r = RunTool({cmd, "--config", missing.string()});
    EXPECT_EQ(r.code, kExitIo) << cmd;
    EXPECT_NE(r.err.find(missing.string()), std::string::npos) << cmd;
  }
}

TEST_F(CliTest, InvalidConfigsAreValidationErrors) {
  for (const std::string& text :
       {std::string("{not json"),
        std::string(R"({"synth": {"dimension": 3}})"),
        std::string(R"({"extra": {}})"),
        std::string(R"({"synth": {"dim": "three"}})"),
        std::string(R"({"train": [{"loss_kind": "mystery"}]})"),
        std::string(R"({"train": [{"step_kind": "cubic"}]})"),
        std::string(R"({"run": {"repetitions": 0}})"),
        std::string(R"({"synth": {"positives": -1}})")}) {
    const CliRun r = RunTool({"train", "--config", WriteConfig(text).string(),
                          "--out", (root_ / "out").string()});
    EXPECT_EQ(r.code, kExitValidation) << text;
    EXPECT_NE(r.err.find("error"), std::string::npos) << text;
  }
}

TEST_F(CliTest, BadFlagsAreValidationErrors) {
  EXPECT_EQ(RunTool({"gradcheck", "--format", "json"}).code, kExitValidation);
  EXPECT_EQ(RunTool({"gradcheck", "--seed", "minus"}).code, kExitValidation);
  EXPECT_EQ(RunTool({"gradcheck", "--config", "x.json"}).code, kExitValidation);
  EXPECT_EQ(RunTool({"train", "--bogus"}).code, kExitValidation);
}

TEST_F(CliTest, GradcheckPasses) {
  const CliRun r = RunTool({"gradcheck", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("instances=500 failures=0"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, TrainWritesTracesAndResults) {
  const fs::path out = root_ / "out";
  const CliRun r = RunTool({"train", "--config", WriteConfig(kSmallTrain).string(),
                        "--out", out.string(), "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* name : {"small_error_driven_ap.csv", "small_auc.csv",
                           "small_smoothed_ap_gd.csv", "small_results.csv"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const std::string trace = ReadFile(out / "small_auc.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')),
            "iter,loss_kind,ap_loss,surrogate,wall_ns,pruned_neg");
  EXPECT_EQ(ReadFile(out / "small_results.csv").substr(0, kResultsCsvHeader.size()),
            kResultsCsvHeader);
}

TEST_F(CliTest, OmitTimingMakesOutputsByteIdentical) {
  const fs::path config = WriteConfig(kSmallTrain);
  const fs::path a = root_ / "a";
  const fs::path b = root_ / "b";
  ASSERT_EQ(RunTool({"train", "--config", config.string(), "--out", a.string(),
                 "--omit-timing"})
                .code,
            kExitOk);
  ASSERT_EQ(RunTool({"train", "--config", config.string(), "--out", b.string(),
                 "--omit-timing"})
                .code,
            kExitOk);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(ReadFile(entry.path()),
              ReadFile(b / entry.path().filename()))
        << entry.path();
    ++files;
  }
  EXPECT_EQ(files, 4);
}

TEST_F(CliTest, SeedFlagOverridesTheConfig) {
  const fs::path config = WriteConfig(kSmallTrain);
  const fs::path a = root_ / "a";
  const fs::path b = root_ / "b";
  ASSERT_EQ(RunTool({"train", "--config", config.string(), "--out", a.string(),
                 "--omit-timing", "--seed", "11"})
                .code,
            kExitOk);
  ASSERT_EQ(RunTool({"train", "--config", config.string(), "--out", b.string(),
                 "--omit-timing", "--seed", "12"})
                .code,
            kExitOk);
  EXPECT_NE(ReadFile(a / "small_auc.csv"), ReadFile(b / "small_auc.csv"));
}

TEST_F(CliTest, CounterexampleWritesBothTraces) {
  const fs::path out = root_ / "out";
  const CliRun r = RunTool({"counterexample", "--out", out.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(out / "counterexample_error_driven_ap.csv"));
  EXPECT_TRUE(fs::exists(out / "counterexample_smoothed_ap_gd.csv"));
  EXPECT_NE(r.out.find("ap_loss_range=[0.16666666666666666, 0.16666666666666666]"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, UnwritableOutputIsAnIoError) {
  const fs::path blocker = root_ / "file";
  std::ofstream(blocker) << "x";
  const CliRun r = RunTool({"counterexample", "--out", (blocker / "sub").string()});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("file"), std::string::npos);
}

TEST_F(CliTest, SweepWithSmallConfig) {
  const fs::path out = root_ / "out";
  const CliRun r = RunTool(
      {"sweep", "--omit-timing", "--out", out.string(), "--config",
       WriteConfig(R"({"synth": {"dim": 4, "positives": 5},
                       "run": {"name": "tiny", "repetitions": 1,
                               "negatives": [10, 50]}})")
           .string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(out / "tiny.csv"));
  EXPECT_NE(r.out.find("error_driven_ap mean final ap_loss by negatives: 10=0 50=0"),
            std::string::npos)
      << r.out;
}

TEST(ConfigTest, ParsesEverySection) {
  ExperimentSpec base;
  base.train = {TrainConfig{}};
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "synth": {"dim": 3, "positives": 4, "negatives": 9, "groups": 2,
              "margin": 0.3, "noise_sigma": 0.0, "seed": 17,
              "score_shift": [1.0, -1.0]},
    "train": {"loss_kind": "inseparable_ap", "step_kind": "piecewise",
              "delta": 0.5, "step_size": 0.1, "max_iters": 7,
              "batching": "per_group", "seed": 2, "theta_snapshot_every": 1,
              "stop_at_zero_loss": false, "normalize_by_positives": true,
              "interpolated": false, "prune_trivial_negatives": false,
              "smoothed_k": 0.7, "smoothed_log_space": true,
              "smoothed_epsilon": 0.05, "sigmoid_k": 0.25},
    "run": {"name": "cfg", "repetitions": 3, "output_path": "elsewhere",
            "init_theta": [1, 2, 3], "negatives": [5, 6]}
  })",
                                                   base);
  EXPECT_EQ(c.spec.synth.dim, 3);
  EXPECT_EQ(c.spec.synth.negatives, 9);
  EXPECT_EQ(c.spec.synth.seed, 17u);
  EXPECT_EQ(c.spec.synth.score_shift, (std::vector<double>{1.0, -1.0}));
  ASSERT_EQ(c.spec.train.size(), 1u);
  const TrainConfig& t = c.spec.train[0];
  EXPECT_EQ(t.loss_kind, LossKind::kInseparableAp);
  EXPECT_EQ(t.step_cfg.kind, StepKind::kPiecewise);
  EXPECT_EQ(t.step_cfg.delta, 0.5);
  EXPECT_EQ(t.step_cfg.k, 0.25);
  EXPECT_EQ(t.batching, Batching::kPerGroup);
  EXPECT_EQ(t.max_iters, 7);
  EXPECT_FALSE(t.stop_at_zero_loss);
  EXPECT_FALSE(t.prune_trivial_negatives);
  EXPECT_TRUE(t.smoothed.log_space);
  EXPECT_EQ(t.smoothed.k, 0.7);
  EXPECT_EQ(c.spec.name, "cfg");
  EXPECT_EQ(c.spec.repetitions, 3);
  EXPECT_EQ(c.spec.output_path, "elsewhere");
  EXPECT_EQ(c.spec.init_theta, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(c.negatives, (std::vector<int>{5, 6}));
}

TEST(ConfigTest, MissingKeysKeepTheBase) {
  ExperimentSpec base;
  base.name = "base";
  base.synth.dim = 9;
  base.train = {TrainConfig{}};
  const ExperimentConfig c = ParseExperimentConfig("{}", base);
  EXPECT_EQ(c.spec.name, "base");
  EXPECT_EQ(c.spec.synth.dim, 9);
  EXPECT_EQ(c.spec.train.size(), 1u);
  EXPECT_FALSE(c.negatives.has_value());
}

TEST(ConfigTest, RejectsUnknownKeysAndWrongTypes) {
  ExperimentSpec base;
  base.train = {TrainConfig{}};
  EXPECT_THROW(ParseExperimentConfig(R"({"run": {"nmae": "x"}})", base),
               std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"train": [{"lr": 1}]})", base),
               std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"synth": {"margin": "big"}})", base),
               std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"([1, 2])", base), std::invalid_argument);
  EXPECT_THROW(ParseExperimentConfig(R"({"train": []})", base),
               std::invalid_argument);
  EXPECT_THROW(
      ParseExperimentConfig(R"({"train": {"loss_kind": "inseparable_ap",
                                          "step_kind": "heaviside"}})",
                            base),
      std::invalid_argument);
}

TEST(ConfigTest, LoadReportsUnreadableFiles) {
  ExperimentSpec base;
  base.train = {TrainConfig{}};
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/ranklosslab.json", base),
               IoError);
}

}  // namespace
}  // namespace ranklosslab::tools
