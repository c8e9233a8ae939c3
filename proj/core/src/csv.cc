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

#include "ranklosslab/csv.h"

#include <charconv>
#include <fstream>
#include <system_error>

namespace ranklosslab {

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, end);
}

void WriteTraceCsv(std::ostream& out, std::span<const TrainTrace> traces,
                   bool include_timing) {
  out << kTraceCsvHeader << '\n';
  for (const TrainTrace& trace : traces) {
    const std::string_view kind = LossKindName(trace.loss_kind);
    for (const TraceRecord& r : trace.records) {
      out << r.iter << ',' << kind << ',' << FormatDouble(r.ap_loss) << ','
          << FormatDouble(r.surrogate) << ','
          << (include_timing ? r.wall_ns : 0) << ',' << r.pruned_neg << '\n';
    }
  }
}

void WriteResultsCsv(std::ostream& out, std::span<const ResultRow> rows,
                     bool include_timing) {
  out << kResultsCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << LossKindName(r.loss_kind) << ',' << r.positives << ',' << r.negatives << ','
        << r.repetition << ',' << FormatDouble(r.final_ap_loss) << ','
        << r.iterations << ',' << (include_timing ? r.wall_ns : 0) << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

void WriteTimingCsv(std::ostream& out, std::span<const TimingBucket> buckets) {
  out << kTimingCsvHeader << '\n';
  for (const TimingBucket& b : buckets) {
    out << b.bucket << ',' << b.first_iter << ',' << b.last_iter << ','
        << FormatDouble(b.mean_pruned_ns) << ','
        << FormatDouble(b.mean_unpruned_ns) << ','
        << FormatDouble(b.mean_pruned_neg) << '\n';
  }
}

void WriteScalingCsv(std::ostream& out, const ScalingResult& scaling) {
  out << kScalingCsvHeader << '\n';
  for (const ScalingPoint& p : scaling.points) {
    out << p.negatives << ',' << FormatDouble(p.median_ns) << '\n';
  }
}

void WriteBoundsCsv(std::ostream& out, std::span<const BoundSuiteRow> rows) {
  out << kBoundsCsvHeader << '\n';
  for (const BoundSuiteRow& row : rows) {
    const BoundReport& r = row.report;
    out << row.run << ',' << row.comparator << ',' << r.T << ','
        << FormatDouble(r.accumulated_ap_loss) << ','
        << FormatDouble(r.bound_value) << ','
        << FormatDouble(r.surrogate_sum_at_u) << ',' << FormatDouble(r.R)
        << ',' << FormatDouble(r.Z_u) << ',' << (r.satisfied ? 1 : 0) << ',';
    if (r.offline) {
      out << FormatDouble(r.offline->harmonic_bound) << ','
          << FormatDouble(r.offline->ratio_bound);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void WriteTextFile(const std::filesystem::path& path,
                   std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path(), ec.message());
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path, "cannot open for writing");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  file.close();
  if (!file) throw IoError(path, "write failed");
}

}  // namespace ranklosslab
