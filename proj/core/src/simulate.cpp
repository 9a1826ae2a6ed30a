#include "dqw/simulate.hpp"

#include "dqw/algebra.hpp"
#include "dqw/error.hpp"
#include "format.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>

namespace dqw::witness {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> linspace(double t_max, int samples) {
  if (samples < 2 || !(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(Errc::invalid_grid, "need at least 2 samples on a positive, finite window");
  }
  std::vector<double> t(samples);
  for (int i = 0; i < samples; ++i) t[i] = t_max * i / (samples - 1);
  return t;
}

json growth_json(const dynamics::Trajectory& traj, std::size_t index) {
  const auto g = dynamics::classify_growth(traj, index);
  json out{{"classification", dynamics::to_string(g.classification)}};
  out["fitted_rate"] = g.fitted_rate ? json(*g.fitted_rate) : json(nullptr);
  return out;
}

json open_json(const thermal::LindbladModel& model, const thermal::OpenTrajectory& traj) {
  double worst_increase = 0.0;
  for (std::size_t i = 1; i < traj.relative_entropies.size(); ++i) {
    worst_increase =
        std::max(worst_increase, traj.relative_entropies[i] - traj.relative_entropies[i - 1]);
  }
  return json{
      {"samples", traj.times.size()},
      {"t_max_s", traj.times.back()},
      {"initial_relative_entropy", traj.relative_entropies.front()},
      {"final_relative_entropy", traj.relative_entropies.back()},
      {"max_entropy_increase", worst_increase},
      {"gibbs_residual", model.gibbs_residual()},
      {"kms_defect", model.kms_defect()},
      {"jump_terms", model.jump_terms().size()},
      {"clipped_states", traj.clipped_states},
  };
}

}  // namespace

SimulationKind parse_simulation_kind(std::string_view name) {
  if (name == "zq") return SimulationKind::zq;
  if (name == "dq") return SimulationKind::dq;
  if (name == "open") return SimulationKind::open;
  if (name == "ceiling") return SimulationKind::ceiling;
  throw Error(Errc::unsupported_kind, "unknown simulation kind '" + std::string(name) + "'");
}

thermal::LindbladModel tissue_davies_model(const bounds::PhysicalParams& params) {
  params.validate();
  const auto& ops = algebra::build_two_spin_operators();
  const auto h = thermal::zeeman_dipolar_hamiltonian(params.omega_0, params.omega_d);
  const double rate =
      bounds::spectral_density(params.omega_0, params.tau_c, params.omega_d * params.omega_d);
  const std::array<thermal::Coupling, 2> couplings{
      thermal::Coupling{ops.I1x, rate},
      thermal::Coupling{ops.I2x, rate},
  };
  return thermal::build_davies_model(h, couplings, thermal::inverse_temperature(params.temperature));
}

thermal::DensityMatrix initial_density(InitialState state, const thermal::LindbladModel& model) {
  switch (state) {
    case InitialState::up_up:
      return thermal::DensityMatrix::pure(Vector::Unit(model.dim(), 0));
    case InitialState::up_down:
      return thermal::DensityMatrix::pure(Vector::Unit(model.dim(), 1));
    case InitialState::down_down:
      return thermal::DensityMatrix::pure(Vector::Unit(model.dim(), 3));
    case InitialState::maximally_mixed:
      return thermal::DensityMatrix::maximally_mixed(model.dim());
    case InitialState::gibbs:
      return model.gibbs_state();
  }
  throw Error(Errc::invalid_state, "unknown initial state");
}

std::vector<double> open_grid(const bounds::PhysicalParams& params,
                              const SimulationOptions& options) {
  double t_max = options.open_t_max;
  if (!(t_max > 0.0)) {
    t_max = 10.0 / bounds::spectral_density(params.omega_0, params.tau_c,
                                            params.omega_d * params.omega_d);
  }
  return linspace(t_max, options.open_samples);
}

dynamics::Trajectory zq_trajectory(const SimulationOptions& options) {
  const auto& ops = algebra::build_two_spin_operators();
  const double j = options.zq_coupling;
  const double t_max = j != 0.0 ? options.zq_periods * std::numbers::pi / std::abs(j)
                                : options.zq_t_max_frozen;
  const auto times = linspace(t_max, options.zq_samples);
  const OperatorMatrix h(j * (ops.Sp.matrix() + ops.Sm.matrix()), "H_ZQ");
  const OperatorMatrix sy((ops.Sp.matrix() - ops.Sm.matrix()) / (2.0 * kI), "Sy");
  const std::array<OperatorMatrix, 2> observables{ops.S0, sy};
  return dynamics::propagate(h, dynamics::StateVector::basis(4, 1), times, observables);
}

dynamics::Trajectory dq_trajectory(const SimulationOptions& options) {
  const auto rep = dynamics::build_su11_rep(options.bargmann_k, options.dq_initial_truncation);
  return dynamics::hyperbolic_signal(rep, options.dq_rate,
                                     linspace(options.dq_t_max, options.dq_samples));
}

thermal::OpenTrajectory open_trajectory(const bounds::PhysicalParams& params,
                                        const SimulationOptions& options) {
  const auto model = tissue_davies_model(params);
  const auto times = open_grid(params, options);
  return thermal::evolve_master(model, initial_density(options.initial, model), times);
}

void write_open_csv(std::ostream& out, const thermal::OpenTrajectory& traj) {
  using detail::format_double;
  out << "time_s,relative_entropy,dq_amplitude,pair_correlation\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]) << ',' << format_double(traj.relative_entropies[i]) << ','
        << format_double(traj.dq_amplitudes[i]) << ',' << format_double(traj.pair_correlations[i])
        << '\n';
  }
}

std::string simulate(SimulationKind kind, const bounds::PhysicalParams& params,
                     const SimulationOptions& options, std::ostream* csv) {
  json doc;
  switch (kind) {
    case SimulationKind::zq: {
      const auto traj = zq_trajectory(options);
      const auto s0 = traj.real_series("S0");
      double peak = 0.0;
      for (double v : s0) peak = std::max(peak, std::abs(v));
      doc = json{{"kind", "zq"},
                 {"coupling_rad_s", options.zq_coupling},
                 {"samples", traj.times.size()},
                 {"max_abs_S0", peak},
                 {"max_norm_drift", traj.max_norm_drift},
                 {"growth", growth_json(traj, traj.index_of("S0"))}};
      if (csv) dynamics::write_csv(*csv, traj);
      break;
    }
    case SimulationKind::dq: {
      const auto traj = dq_trajectory(options);
      const auto s = traj.real_series("pair_signal");
      double worst = 0.0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        const double sh = std::sinh(options.dq_rate * traj.times[i]);
        const double exact = 2.0 * options.bargmann_k * sh * sh;
        worst = std::max(worst, std::abs(s[i] - exact) / exact);
      }
      const double sh_end = std::sinh(options.dq_rate * traj.times.back());
      doc = json{{"kind", "dq"},
                 {"bargmann_k", options.bargmann_k},
                 {"rate", options.dq_rate},
                 {"truncation_dim", *traj.truncation_dim},
                 {"truncation_tail", *traj.truncation_tail},
                 {"consistency_delta", traj.consistency_delta ? json(*traj.consistency_delta)
                                                              : json(nullptr)},
                 {"final_pair_signal", s.back()},
                 {"final_closed_form", 2.0 * options.bargmann_k * sh_end * sh_end},
                 {"max_rel_error", worst},
                 {"growth", growth_json(traj, traj.index_of("pair_signal"))}};
      if (csv) dynamics::write_csv(*csv, traj);
      break;
    }
    case SimulationKind::open: {
      const auto model = tissue_davies_model(params);
      const auto traj = thermal::evolve_master(model, initial_density(options.initial, model),
                                               open_grid(params, options));
      doc = json{{"kind", "open"}, {"initial_state", to_string(options.initial)}};
      doc.update(open_json(model, traj));
      if (csv) write_open_csv(*csv, traj);
      break;
    }
    case SimulationKind::ceiling: {
      const auto model = tissue_davies_model(params);
      const auto scan = thermal::ceiling_scan(model, initial_density(options.initial, model),
                                              open_grid(params, options));
      doc = json{{"kind", "ceiling"},
                 {"initial_state", to_string(options.initial)},
                 {"max_pair_correlation", scan.max_pair_correlation},
                 {"gibbs_pair_correlation", scan.gibbs_pair_correlation},
                 {"below_ceiling", scan.below_ceiling}};
      doc.update(open_json(model, scan.trajectory));
      if (csv) write_open_csv(*csv, scan.trajectory);
      break;
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace dqw::witness
