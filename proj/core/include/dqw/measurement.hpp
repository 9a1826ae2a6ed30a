#pragma once

#include "dqw/bounds.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dqw::witness {

struct MeasurementRow {
  double time = 0.0;     // s
  double f_dq = 0.0;     // dimensionless, >= 0
  double t2_star = 0.0;  // s, > 0
  std::optional<double> mt_ratio;
};

// Where f_dq came from: the f_dq column, or s_dq / m0.
enum class FdqSource { f_dq_column, s_dq_over_m0 };

struct MeasurementSeries {
  std::vector<MeasurementRow> rows;
  bool has_mt = false;
  FdqSource source = FdqSource::f_dq_column;
  std::size_t skipped_lines = 0;
  std::vector<std::string> diagnostics;
};

// CSV, comma-delimited, '.' decimals, header
//   time_s,f_dq,t2_star_s[,mt_ratio]    or
//   time_s,s_dq,m0,t2_star_s[,mt_ratio]
// Blank lines and '#' comments are skipped and reported. Errors carry the
// 1-based line number.
MeasurementSeries ingest(std::istream& in);
MeasurementSeries ingest_file(const std::filesystem::path& path);

struct GateThresholds {
  double cv = 0.05;         // coefficient of variation, for T2* and MT
  double deviation = 0.10;  // single-sample deviation from the T2* median
};

struct GateResult {
  bounds::GateStatus status = bounds::GateStatus::not_evaluated;
  double t2_cv = 0.0;
  double max_rel_deviation = 0.0;
  std::optional<double> mt_cv;
  GateThresholds thresholds;
};

// Population standard deviation over mean; deviations are relative to the
// window median. Throws InsufficientRows below 3 rows.
GateResult stability_gate(const MeasurementSeries& series, const GateThresholds& thresholds = {});

std::string to_string(FdqSource source);

}  // namespace dqw::witness
