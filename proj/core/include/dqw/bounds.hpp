#pragma once

#include <string>

namespace dqw::bounds {

// Scalar physics inputs, SI with angular frequencies in rad/s.
struct PhysicalParams {
  double omega_d = 0.0;         // dipolar fluctuation amplitude
  double omega_d_static = 0.0;  // residual static (motionally averaged) coupling
  double temperature = 0.0;     // K
  double mixing_time = 0.0;     // s
  double tau_c = 0.0;           // bath correlation time, s
  double omega_0 = 0.0;         // Larmor frequency

  // Restricted water in neural tissue: omega_D/2pi = 10 kHz, static 5 Hz,
  // 310 K, t_m = 5 ms, tau_c = 1 ns, 400 MHz Larmor.
  static PhysicalParams tissue_defaults();

  // Throws InvalidParameter unless every field is strictly positive
  // (omega_d_static may be zero).
  void validate() const;
};

double hz_to_rad(double hz);

// hbar * omega_d, J
double dipolar_energy(const PhysicalParams& params);

// hbar omega_d / (k_B T)
double epsilon_th(const PhysicalParams& params);

// (omega_d_static * t_m)^2
double eta_seq(const PhysicalParams& params);

// The (omega t)^2 scaling is only an order-of-magnitude estimate; above 1 it
// has left its regime.
bool eta_seq_in_regime(double eta);

// BPP Lorentzian 2 <omega_D^2> tau_c / (1 + omega_0^2 tau_c^2), rad/s.
double spectral_density(double omega_0, double tau_c, double mean_square_omega_d);
// 2x / (1 + x^2), x = omega_0 tau_c
double normalized_spectral_density(double x);

enum class GateStatus { stable, unstable, not_evaluated };

struct ClassicalBound {
  double value = 0.0;
  // false when the T2* gate is not stable: the sequence-transfer cap then has
  // no empirical support.
  bool certifiable = false;
};

ClassicalBound f_class_max(const PhysicalParams& params, GateStatus gate);

enum class Verdict { classically_inexplicable, not_excluded, loophole_open };

struct WitnessReport {
  double epsilon_th = 0.0;
  double eta_seq = 0.0;
  double f_class_max = 0.0;
  double f_dq_measured = 0.0;
  double w_th = 0.0;
  bool certifiable = false;
  bool eta_seq_in_regime = true;
  GateStatus gate_status = GateStatus::not_evaluated;
  Verdict verdict = Verdict::not_excluded;
};

// w_th = f_dq - (epsilon_th + eta_seq). Throws NegativeAmplitude for f_dq < 0.
WitnessReport witness(double f_dq_measured, const PhysicalParams& params, GateStatus gate);

Verdict classify(double w_th, GateStatus gate);

std::string to_string(GateStatus status);
std::string to_string(Verdict verdict);

}  // namespace dqw::bounds
