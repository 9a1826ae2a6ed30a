#include "dqw/measurement.hpp"

#include "dqw/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

namespace dqw::witness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

double parse_number(std::string_view field, std::string_view column, std::size_t line) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(Errc::malformed_row, at_line(line) + "column '" + std::string(column) +
                                         "' is not a finite number: '" + std::string(field) + "'");
  }
  return value;
}

struct Layout {
  FdqSource source;
  bool has_mt;
  std::size_t columns;
};

Layout parse_header(const std::vector<std::string_view>& names, std::size_t line) {
  const std::vector<std::string_view> direct{"time_s", "f_dq", "t2_star_s"};
  const std::vector<std::string_view> ratio{"time_s", "s_dq", "m0", "t2_star_s"};
  for (const auto* base : {&direct, &ratio}) {
    const bool prefix =
        names.size() >= base->size() && std::equal(base->begin(), base->end(), names.begin());
    if (!prefix) continue;
    if (names.size() == base->size()) {
      return {base == &direct ? FdqSource::f_dq_column : FdqSource::s_dq_over_m0, false,
              names.size()};
    }
    if (names.size() == base->size() + 1 && names.back() == "mt_ratio") {
      return {base == &direct ? FdqSource::f_dq_column : FdqSource::s_dq_over_m0, true,
              names.size()};
    }
  }
  throw Error(Errc::malformed_header,
              at_line(line) + "expected 'time_s,f_dq,t2_star_s[,mt_ratio]' or "
                              "'time_s,s_dq,m0,t2_star_s[,mt_ratio]'");
}

}  // namespace

MeasurementSeries ingest(std::istream& in) {
  MeasurementSeries series;
  std::optional<Layout> layout;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    text = trim(text);
    if (text.empty() || text.front() == '#') {
      ++series.skipped_lines;
      series.diagnostics.push_back(at_line(line) + (text.empty() ? "blank line skipped"
                                                                 : "comment skipped"));
      continue;
    }
    const auto fields = split(text);
    if (!layout) {
      layout = parse_header(fields, line);
      series.source = layout->source;
      series.has_mt = layout->has_mt;
      continue;
    }
    if (fields.size() != layout->columns) {
      throw Error(Errc::malformed_row, at_line(line) + "expected " +
                                           std::to_string(layout->columns) + " fields, found " +
                                           std::to_string(fields.size()));
    }

    MeasurementRow row;
    std::size_t col = 0;
    row.time = parse_number(fields[col++], "time_s", line);
    if (layout->source == FdqSource::f_dq_column) {
      row.f_dq = parse_number(fields[col++], "f_dq", line);
      if (row.f_dq < 0.0) throw Error(Errc::negative_value, at_line(line) + "f_dq < 0");
    } else {
      const double s_dq = parse_number(fields[col++], "s_dq", line);
      const double m0 = parse_number(fields[col++], "m0", line);
      if (s_dq < 0.0) throw Error(Errc::negative_value, at_line(line) + "s_dq < 0");
      if (!(m0 > 0.0)) throw Error(Errc::negative_value, at_line(line) + "m0 must be > 0");
      row.f_dq = s_dq / m0;
    }
    row.t2_star = parse_number(fields[col++], "t2_star_s", line);
    if (!(row.t2_star > 0.0)) {
      throw Error(Errc::negative_value, at_line(line) + "t2_star_s must be > 0");
    }
    if (layout->has_mt) {
      const double mt = parse_number(fields[col++], "mt_ratio", line);
      if (mt < 0.0) throw Error(Errc::negative_value, at_line(line) + "mt_ratio < 0");
      if (mt > 1.0) throw Error(Errc::value_out_of_range, at_line(line) + "mt_ratio > 1");
      row.mt_ratio = mt;
    }
    if (!series.rows.empty() && !(row.time > series.rows.back().time)) {
      throw Error(Errc::non_monotonic_time, at_line(line) + "time_s must be strictly increasing");
    }
    series.rows.push_back(row);
  }
  if (!layout) {
    throw Error(Errc::malformed_header, at_line(line + 1) + "no header found");
  }
  return series;
}

MeasurementSeries ingest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  return ingest(in);
}

namespace {

struct Moments {
  double mean = 0.0;
  double cv = 0.0;
};

// Shifted by the first sample, so a constant series gives exactly zero spread.
Moments moments(const std::vector<double>& values) {
  Moments m;
  const double n = static_cast<double>(values.size());
  const double shift = values.front();
  double sum = 0.0, sum_sq = 0.0;
  for (double v : values) {
    sum += v - shift;
    sum_sq += (v - shift) * (v - shift);
  }
  m.mean = shift + sum / n;
  const double sd = std::sqrt(std::max(0.0, sum_sq / n - (sum / n) * (sum / n)));
  if (m.mean != 0.0) {
    m.cv = sd / std::abs(m.mean);
  } else {
    m.cv = sd == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return m;
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

GateResult stability_gate(const MeasurementSeries& series, const GateThresholds& thresholds) {
  if (series.rows.size() < 3) {
    throw Error(Errc::insufficient_rows, "stability gate needs at least 3 rows, got " +
                                             std::to_string(series.rows.size()));
  }
  std::vector<double> t2;
  std::vector<double> mt;
  for (const auto& row : series.rows) {
    t2.push_back(row.t2_star);
    if (row.mt_ratio) mt.push_back(*row.mt_ratio);
  }

  GateResult gate;
  gate.thresholds = thresholds;
  gate.t2_cv = moments(t2).cv;
  const double centre = median(t2);
  for (double v : t2) {
    gate.max_rel_deviation = std::max(gate.max_rel_deviation, std::abs(v - centre) / centre);
  }
  if (series.has_mt) gate.mt_cv = moments(mt).cv;

  const bool stable = gate.t2_cv <= thresholds.cv && gate.max_rel_deviation <= thresholds.deviation &&
                      (!gate.mt_cv || *gate.mt_cv <= thresholds.cv);
  gate.status = stable ? bounds::GateStatus::stable : bounds::GateStatus::unstable;
  return gate;
}

std::string to_string(FdqSource source) {
  return source == FdqSource::f_dq_column ? "f_dq" : "s_dq/m0";
}

}  // namespace dqw::witness
