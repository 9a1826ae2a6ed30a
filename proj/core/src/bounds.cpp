#include "dqw/bounds.hpp"

#include "dqw/constants.hpp"
#include "dqw/error.hpp"

#include <cmath>

namespace dqw::bounds {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || std::isnan(value)) {
    throw Error(Errc::invalid_parameter, std::string(name) + " must be strictly positive");
  }
}

}  // namespace

PhysicalParams PhysicalParams::tissue_defaults() {
  return PhysicalParams{
      hz_to_rad(10e3), hz_to_rad(5.0), 310.0, 5e-3, 1e-9, hz_to_rad(400e6),
  };
}

void PhysicalParams::validate() const {
  require_positive(omega_d, "omega_d");
  if (!(omega_d_static >= 0.0) || !std::isfinite(omega_d_static)) {
    throw Error(Errc::invalid_parameter, "omega_d_static must be non-negative");
  }
  require_positive(temperature, "temperature");
  require_positive(mixing_time, "mixing_time");
  require_positive(tau_c, "tau_c");
  require_positive(omega_0, "omega_0");
}

double hz_to_rad(double hz) { return constants::two_pi * hz; }

double dipolar_energy(const PhysicalParams& params) { return constants::hbar * params.omega_d; }

double epsilon_th(const PhysicalParams& params) {
  require_positive(params.temperature, "temperature");
  return constants::hbar * params.omega_d / (constants::boltzmann * params.temperature);
}

double eta_seq(const PhysicalParams& params) {
  require_positive(params.mixing_time, "mixing_time");
  const double phase = params.omega_d_static * params.mixing_time;
  return phase * phase;
}

bool eta_seq_in_regime(double eta) { return eta <= 1.0; }

double spectral_density(double omega_0, double tau_c, double mean_square_omega_d) {
  require_positive(tau_c, "tau_c");
  const double x = omega_0 * tau_c;
  return 2.0 * mean_square_omega_d * tau_c / (1.0 + x * x);
}

double normalized_spectral_density(double x) { return 2.0 * x / (1.0 + x * x); }

ClassicalBound f_class_max(const PhysicalParams& params, GateStatus gate) {
  params.validate();
  return ClassicalBound{epsilon_th(params) + eta_seq(params), gate == GateStatus::stable};
}

Verdict classify(double w_th, GateStatus gate) {
  if (!(w_th > 0.0)) return Verdict::not_excluded;
  return gate == GateStatus::stable ? Verdict::classically_inexplicable : Verdict::loophole_open;
}

WitnessReport witness(double f_dq_measured, const PhysicalParams& params, GateStatus gate) {
  if (!(f_dq_measured >= 0.0) || !std::isfinite(f_dq_measured)) {
    throw Error(Errc::negative_amplitude, "measured DQ fraction must be finite and >= 0");
  }
  params.validate();
  WitnessReport r;
  r.epsilon_th = epsilon_th(params);
  r.eta_seq = eta_seq(params);
  r.f_class_max = r.epsilon_th + r.eta_seq;
  r.f_dq_measured = f_dq_measured;
  r.w_th = f_dq_measured - r.f_class_max;
  r.certifiable = gate == GateStatus::stable;
  r.eta_seq_in_regime = eta_seq_in_regime(r.eta_seq);
  r.gate_status = gate;
  r.verdict = classify(r.w_th, gate);
  return r;
}

std::string to_string(GateStatus status) {
  switch (status) {
    case GateStatus::stable: return "stable";
    case GateStatus::unstable: return "unstable";
    case GateStatus::not_evaluated: return "not_evaluated";
  }
  return "unknown";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::classically_inexplicable: return "classically_inexplicable";
    case Verdict::not_excluded: return "not_excluded";
    case Verdict::loophole_open: return "loophole_open";
  }
  return "unknown";
}

}  // namespace dqw::bounds
