#pragma once

#include "dqw/bounds.hpp"
#include "dqw/measurement.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dqw::witness {

struct WitnessConfig {
  bounds::PhysicalParams params = bounds::PhysicalParams::tissue_defaults();
  GateThresholds thresholds;
};

struct WitnessOutcome {
  bounds::WitnessReport report;
  GateResult gate;
  double peak_time = 0.0;  // time of the f_dq maximum
  std::vector<std::string> notes;
  int exit_code = 0;
};

// Exit codes: 0 not_excluded, 2 classically_inexplicable, 3 loophole_open.
// 1 is reserved for errors.
int exit_code(bounds::Verdict verdict);

// f_dq_measured is the series maximum. Fewer than 3 rows leaves the gate
// not_evaluated (and the verdict uncertifiable) rather than failing.
WitnessOutcome run_witness(const WitnessConfig& config, const MeasurementSeries& series);

// One JSON document: tool, params, input summary, gate, witness, notes.
std::string report_json(const WitnessOutcome& outcome, const WitnessConfig& config,
                        const MeasurementSeries& series);

// Plain-text bound summary rounded to 4 significant figures, and its JSON twin.
std::string bounds_text(const bounds::PhysicalParams& params);
std::string bounds_json(const bounds::PhysicalParams& params);

std::string_view tool_version();

// %.4g
std::string four_sig(double value);

}  // namespace dqw::witness
