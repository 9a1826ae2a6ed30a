#include "dqw/figures.hpp"

#include "dqw/error.hpp"
#include "dqw/simulate.hpp"
#include "format.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dqw::witness {

using detail::format_double;

FigureKind parse_figure_kind(std::string_view name) {
  if (name == "bpp_curve") return FigureKind::bpp_curve;
  if (name == "zq_signal") return FigureKind::zq_signal;
  if (name == "dq_signal") return FigureKind::dq_signal;
  if (name == "open_trajectory") return FigureKind::open_trajectory;
  throw Error(Errc::unsupported_kind, "unknown figure kind '" + std::string(name) + "'");
}

std::string to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::bpp_curve: return "bpp_curve";
    case FigureKind::zq_signal: return "zq_signal";
    case FigureKind::dq_signal: return "dq_signal";
    case FigureKind::open_trajectory: return "open_trajectory";
  }
  return "unknown";
}

InitialState parse_initial_state(std::string_view name) {
  if (name == "up_up") return InitialState::up_up;
  if (name == "up_down") return InitialState::up_down;
  if (name == "down_down") return InitialState::down_down;
  if (name == "mixed") return InitialState::maximally_mixed;
  if (name == "gibbs") return InitialState::gibbs;
  throw Error(Errc::invalid_state, "unknown initial state '" + std::string(name) + "'");
}

std::string to_string(InitialState state) {
  switch (state) {
    case InitialState::up_up: return "up_up";
    case InitialState::up_down: return "up_down";
    case InitialState::down_down: return "down_down";
    case InitialState::maximally_mixed: return "mixed";
    case InitialState::gibbs: return "gibbs";
  }
  return "unknown";
}

void emit_figure_data(FigureKind kind, const bounds::PhysicalParams& params,
                      const SimulationOptions& options, std::ostream& out) {
  switch (kind) {
    case FigureKind::bpp_curve: {
      out << "x,J_norm\n";
      for (int i = 0; i <= kBppIntervals; ++i) {
        // 5 i / 300 rather than i * (5 / 300) keeps x = 1, 2, 0.5, ... exact
        const double x = kBppXMax * i / kBppIntervals;
        out << format_double(x) << ',' << format_double(bounds::normalized_spectral_density(x))
            << '\n';
      }
      return;
    }
    case FigureKind::zq_signal:
      dynamics::write_csv(out, zq_trajectory(options));
      return;
    case FigureKind::dq_signal: {
      const auto traj = dq_trajectory(options);
      const auto s = traj.real_series("pair_signal");
      const auto tail = traj.real_series("truncation_tail");
      out << "time_s,pair_signal,truncation_tail,closed_form\n";
      for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double sh = std::sinh(options.dq_rate * traj.times[i]);
        out << format_double(traj.times[i]) << ',' << format_double(s[i]) << ','
            << format_double(tail[i]) << ',' << format_double(2.0 * options.bargmann_k * sh * sh)
            << '\n';
      }
      return;
    }
    case FigureKind::open_trajectory:
      write_open_csv(out, open_trajectory(params, options));
      return;
  }
  throw Error(Errc::unsupported_kind, "unknown figure kind");
}

void emit_figure_data(FigureKind kind, const bounds::PhysicalParams& params,
                      const SimulationOptions& options, const std::filesystem::path& path) {
  // Render fully before touching the file so a failed simulation leaves nothing behind.
  std::ostringstream buffer;
  emit_figure_data(kind, params, options, buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
  out << buffer.str();
  if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
}

}  // namespace dqw::witness
