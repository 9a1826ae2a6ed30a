#pragma once

#include "dqw/bounds.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dqw::witness {

enum class FigureKind { bpp_curve, zq_signal, dq_signal, open_trajectory };

// Throws UnsupportedKind for anything but the four names above.
FigureKind parse_figure_kind(std::string_view name);
std::string to_string(FigureKind kind);

enum class InitialState { up_up, up_down, down_down, maximally_mixed, gibbs };

InitialState parse_initial_state(std::string_view name);
std::string to_string(InitialState state);

struct SimulationOptions {
  // ZQ exchange: H = J (S+ + S-), J in rad/s; 10 periods of cos(2 J t).
  double zq_coupling = 2.0 * 3.14159265358979323846 * 10.0;
  double zq_periods = 10.0;
  double zq_t_max_frozen = 1.0;  // window used when J = 0
  int zq_samples = 1001;

  // DQ pair creation in the truncated SU(1,1) representation.
  double bargmann_k = 0.5;
  double dq_rate = 1.0;  // g, 1/s
  double dq_t_max = 2.0;
  int dq_samples = 201;
  int dq_initial_truncation = 32;

  // Two-spin Davies relaxation; t_max <= 0 means ten inverse base rates.
  InitialState initial = InitialState::up_up;
  double open_t_max = 0.0;
  int open_samples = 201;
};

// bpp_curve: x, J_norm on x_i = 5 i / 300, i = 0..300
// zq_signal: time_s, S0, Sy
// dq_signal: time_s, pair_signal, truncation_tail, closed_form
// open_trajectory: time_s, relative_entropy, dq_amplitude, pair_correlation
void emit_figure_data(FigureKind kind, const bounds::PhysicalParams& params,
                      const SimulationOptions& options, std::ostream& out);
void emit_figure_data(FigureKind kind, const bounds::PhysicalParams& params,
                      const SimulationOptions& options, const std::filesystem::path& path);

// Grid used by bpp_curve.
constexpr int kBppIntervals = 300;
constexpr double kBppXMax = 5.0;

}  // namespace dqw::witness
