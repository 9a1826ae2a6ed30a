#include "dqw/report.hpp"

#include "dqw/constants.hpp"
#include "dqw/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace dqw::witness {

namespace {

using json = nlohmann::ordered_json;

json params_json(const bounds::PhysicalParams& p) {
  const double to_hz = 1.0 / constants::two_pi;
  return json{
      {"omega_d_hz", p.omega_d * to_hz},
      {"omega_d_static_hz", p.omega_d_static * to_hz},
      {"temperature_k", p.temperature},
      {"mixing_time_s", p.mixing_time},
      {"tau_c_s", p.tau_c},
      {"larmor_hz", p.omega_0 * to_hz},
  };
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view tool_version() { return DQW_VERSION; }

std::string four_sig(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

int exit_code(bounds::Verdict verdict) {
  switch (verdict) {
    case bounds::Verdict::not_excluded: return 0;
    case bounds::Verdict::classically_inexplicable: return 2;
    case bounds::Verdict::loophole_open: return 3;
  }
  return 1;
}

WitnessOutcome run_witness(const WitnessConfig& config, const MeasurementSeries& series) {
  if (series.rows.empty()) throw Error(Errc::insufficient_rows, "measurement series has no rows");
  config.params.validate();

  WitnessOutcome out;
  const auto peak = std::max_element(series.rows.begin(), series.rows.end(),
                                     [](const auto& a, const auto& b) { return a.f_dq < b.f_dq; });
  out.peak_time = peak->time;

  out.gate.thresholds = config.thresholds;
  if (series.rows.size() >= 3) {
    out.gate = stability_gate(series, config.thresholds);
  } else {
    out.notes.push_back("fewer than 3 rows: stability gate not evaluated");
  }
  if (series.has_mt) {
    out.notes.push_back("mt_ratio present: MT joins the gate with the T2* CV threshold");
  }
  if (series.source == FdqSource::s_dq_over_m0) {
    out.notes.push_back("f_dq computed as s_dq / m0");
  }

  out.report = bounds::witness(peak->f_dq, config.params, out.gate.status);
  if (!out.report.eta_seq_in_regime) {
    out.notes.push_back("eta_seq > 1: the sequence-transfer scaling is outside its regime");
  }
  out.exit_code = exit_code(out.report.verdict);
  return out;
}

std::string report_json(const WitnessOutcome& outcome, const WitnessConfig& config,
                        const MeasurementSeries& series) {
  const auto& r = outcome.report;
  const auto& g = outcome.gate;
  json doc{
      {"tool", {{"name", "dqwitness"}, {"version", std::string(tool_version())}}},
      {"params", params_json(config.params)},
      {"input",
       {{"rows", series.rows.size()},
        {"skipped_lines", series.skipped_lines},
        {"f_dq_source", to_string(series.source)},
        {"peak_time_s", outcome.peak_time}}},
      {"gate",
       {{"status", bounds::to_string(g.status)},
        {"t2_cv", g.t2_cv},
        {"max_rel_deviation", g.max_rel_deviation},
        {"mt_cv", nullable(g.mt_cv)},
        {"mt_in_gate", series.has_mt},
        {"cv_threshold", g.thresholds.cv},
        {"dev_threshold", g.thresholds.deviation}}},
      {"witness",
       {{"epsilon_th", r.epsilon_th},
        {"eta_seq", r.eta_seq},
        {"eta_seq_in_regime", r.eta_seq_in_regime},
        {"f_class_max", r.f_class_max},
        {"f_dq_measured", r.f_dq_measured},
        {"w_th", r.w_th},
        {"certifiable", r.certifiable},
        {"gate_status", bounds::to_string(r.gate_status)},
        {"verdict", bounds::to_string(r.verdict)}}},
      {"exit_code", outcome.exit_code},
      {"notes", outcome.notes},
  };
  return doc.dump(2) + "\n";
}

std::string bounds_text(const bounds::PhysicalParams& params) {
  params.validate();
  const double eta = bounds::eta_seq(params);
  const auto cls = bounds::f_class_max(params, bounds::GateStatus::stable);
  const double j0 =
      bounds::spectral_density(params.omega_0, params.tau_c, params.omega_d * params.omega_d);
  std::ostringstream out;
  out << "hbar_omega_d   " << four_sig(bounds::dipolar_energy(params)) << " J\n"
      << "epsilon_th     " << four_sig(bounds::epsilon_th(params)) << "\n"
      << "eta_seq        " << four_sig(eta) << "\n"
      << "f_class_max    " << four_sig(cls.value) << "\n"
      << "J(omega_0)     " << four_sig(j0) << " rad/s\n";
  if (!bounds::eta_seq_in_regime(eta)) {
    out << "warning: eta_seq > 1, the sequence-transfer scaling is outside its regime\n";
  }
  return out.str();
}

std::string bounds_json(const bounds::PhysicalParams& params) {
  params.validate();
  const double eta = bounds::eta_seq(params);
  json doc{
      {"tool", {{"name", "dqwitness"}, {"version", std::string(tool_version())}}},
      {"params", params_json(params)},
      {"hbar_omega_d_j", bounds::dipolar_energy(params)},
      {"epsilon_th", bounds::epsilon_th(params)},
      {"eta_seq", eta},
      {"eta_seq_in_regime", bounds::eta_seq_in_regime(eta)},
      {"f_class_max", bounds::f_class_max(params, bounds::GateStatus::stable).value},
      {"spectral_density_rad_s",
       bounds::spectral_density(params.omega_0, params.tau_c, params.omega_d * params.omega_d)},
  };
  return doc.dump(2) + "\n";
}

}  // namespace dqw::witness
