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

// CSV output for traces, experiment results and timings.

#ifndef RANKLOSSLAB_CSV_H_
#define RANKLOSSLAB_CSV_H_

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ranklosslab/experiment.h"
#include "ranklosslab/linear_trainer.h"

namespace ranklosslab {

// File system failure; what() names the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline constexpr std::string_view kTraceCsvHeader =
    "iter,loss_kind,ap_loss,surrogate,wall_ns,pruned_neg";
inline constexpr std::string_view kResultsCsvHeader =
    "loss_kind,positives,negatives,repetition,final_ap_loss,iterations,"
    "wall_ns,converged";
inline constexpr std::string_view kTimingCsvHeader =
    "bucket,first_iter,last_iter,mean_pruned_ns,mean_unpruned_ns,"
    "mean_pruned_neg";
inline constexpr std::string_view kScalingCsvHeader = "negatives,median_ns";
inline constexpr std::string_view kBoundsCsvHeader =
    "run,comparator,T,accumulated_ap_loss,bound_value,surrogate_sum_at_u,R,"
    "Z_u,satisfied,offline_harmonic_bound,offline_ratio_bound";

// Shortest text that reads back to the same double.
std::string FormatDouble(double value);

// With include_timing = false the wall_ns column is written as 0, which makes
// the output a pure function of the inputs.
void WriteTraceCsv(std::ostream& out, std::span<const TrainTrace> traces,
                   bool include_timing = true);
void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows,
                     bool include_timing = true);
void WriteTimingCsv(std::ostream& out, std::span<const TimingBucket> buckets);
void WriteScalingCsv(std::ostream& out, const ScalingResult& scaling);
void WriteBoundsCsv(std::ostream& out, std::span<const BoundSuiteRow> rows);

// Writes `contents` to `path`, creating parent directories. Throws IoError.
void WriteTextFile(const std::filesystem::path& path,
                   std::string_view contents);

}  // namespace ranklosslab

#endif  // RANKLOSSLAB_CSV_H_
