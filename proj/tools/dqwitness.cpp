// dqwitness: classical-bound and witness evaluation for DQ NMR/MRI series.

#include "dqw/config.hpp"
#include "dqw/error.hpp"
#include "dqw/figures.hpp"
#include "dqw/measurement.hpp"
#include "dqw/report.hpp"
#include "dqw/simulate.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace dqw;

struct ParamFlags {
  std::string config;
  witness::ParamOverrides values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "flat key = value parameter file");
    cmd->add_option("--omega-d-hz", values.omega_d_hz, "dipolar fluctuation amplitude, Hz");
    cmd->add_option("--omega-d-static-hz", values.omega_d_static_hz,
                    "residual static dipolar coupling, Hz");
    cmd->add_option("--temperature-k", values.temperature_k, "temperature, K");
    cmd->add_option("--mixing-time-s", values.mixing_time_s, "mixing time, s");
    cmd->add_option("--tau-c-s", values.tau_c_s, "bath correlation time, s");
    cmd->add_option("--larmor-hz", values.larmor_hz, "Larmor frequency, Hz");
  }

  bounds::PhysicalParams resolve() const {
    const auto file = config.empty() ? witness::ParamOverrides{} : witness::parse_config_file(config);
    return witness::resolve_params(file, values);
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::io_error, "write failed for '" + path + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Classical-bound DQ witness: bounds, reports, simulations, figure data"};
  app.set_version_flag("--version", std::string(witness::tool_version()));
  app.require_subcommand(1);

  ParamFlags bounds_params;
  bool bounds_as_json = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "print epsilon_th, eta_seq and f_class_max");
  bounds_params.attach(bounds_cmd);
  bounds_cmd->add_flag("--json", bounds_as_json, "emit JSON instead of text");

  ParamFlags witness_params;
  std::string input;
  std::string report_path;
  witness::GateThresholds thresholds;
  auto* witness_cmd = app.add_subcommand("witness", "evaluate the witness on a measurement CSV");
  witness_params.attach(witness_cmd);
  witness_cmd->add_option("--input", input, "CSV: time_s,f_dq,t2_star_s[,mt_ratio]")->required();
  witness_cmd->add_option("--output", report_path, "report path (default stdout)");
  witness_cmd->add_option("--cv-threshold", thresholds.cv, "T2*/MT coefficient-of-variation cap")
      ->check(CLI::PositiveNumber);
  witness_cmd->add_option("--dev-threshold", thresholds.deviation,
                          "single-sample T2* deviation cap, relative to the median")
      ->check(CLI::PositiveNumber);

  ParamFlags sim_params;
  witness::SimulationOptions options;
  std::string sim_kind;
  std::string sim_output;
  std::string initial = "up_up";
  std::optional<double> coupling_hz;
  auto* sim_cmd = app.add_subcommand("simulate", "run a trajectory and print a JSON summary");
  sim_params.attach(sim_cmd);
  sim_cmd->add_option("--kind", sim_kind, "zq, dq, open or ceiling")->required();
  sim_cmd->add_option("--output", sim_output, "also write the trajectory CSV here");
  sim_cmd->add_option("--initial", initial, "open/ceiling start: up_up, up_down, down_down, mixed, gibbs");
  sim_cmd->add_option("--coupling-hz", coupling_hz, "zq exchange J/2pi, Hz");
  sim_cmd->add_option("--bargmann-k", options.bargmann_k, "dq Bargmann index");
  sim_cmd->add_option("--rate", options.dq_rate, "dq pair-creation rate g, 1/s");
  sim_cmd->add_option("--t-max", options.dq_t_max, "dq window, s");
  sim_cmd->add_option("--open-t-max", options.open_t_max, "open/ceiling window, s");
  sim_cmd->add_option("--samples", options.open_samples, "open/ceiling grid size");

  ParamFlags fig_params;
  std::string fig_kind;
  std::string fig_output;
  auto* fig_cmd = app.add_subcommand("figure", "emit figure data as CSV");
  fig_params.attach(fig_cmd);
  fig_cmd->add_option("--kind", fig_kind, "bpp_curve, zq_signal, dq_signal or open_trajectory")
      ->required();
  fig_cmd->add_option("--output", fig_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (bounds_cmd->parsed()) {
    const auto params = bounds_params.resolve();
    std::cout << (bounds_as_json ? witness::bounds_json(params) : witness::bounds_text(params));
    return 0;
  }

  if (witness_cmd->parsed()) {
    witness::WitnessConfig config{witness_params.resolve(), thresholds};
    const auto series = witness::ingest_file(input);
    for (const auto& d : series.diagnostics) std::cerr << input << ": " << d << '\n';
    const auto outcome = witness::run_witness(config, series);
    write_text(report_path, witness::report_json(outcome, config, series));
    return outcome.exit_code;
  }

  if (sim_cmd->parsed()) {
    const auto params = sim_params.resolve();
    const auto kind = witness::parse_simulation_kind(sim_kind);
    options.initial = witness::parse_initial_state(initial);
    if (coupling_hz) options.zq_coupling = bounds::hz_to_rad(*coupling_hz);
    std::ostringstream csv;
    const auto summary = witness::simulate(kind, params, options, sim_output.empty() ? nullptr : &csv);
    if (!sim_output.empty()) write_text(sim_output, csv.str());
    std::cout << summary;
    return 0;
  }

  if (fig_cmd->parsed()) {
    const auto params = fig_params.resolve();
    const auto kind = witness::parse_figure_kind(fig_kind);
    if (fig_output.empty()) {
      witness::emit_figure_data(kind, params, options, std::cout);
    } else {
      witness::emit_figure_data(kind, params, options, std::filesystem::path(fig_output));
    }
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dqw::Error& e) {
    std::cerr << "dqwitness: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "dqwitness: " << e.what() << '\n';
  } catch (...) {
    std::cerr << "dqwitness: unknown failure\n";
  }
  return 1;
}
