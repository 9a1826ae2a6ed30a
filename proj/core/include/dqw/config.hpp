#pragma once

#include "dqw/bounds.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace dqw::witness {

// Physical inputs as users write them: frequencies in Hz (not rad/s).
struct ParamOverrides {
  std::optional<double> omega_d_hz;
  std::optional<double> omega_d_static_hz;
  std::optional<double> temperature_k;
  std::optional<double> mixing_time_s;
  std::optional<double> tau_c_s;
  std::optional<double> larmor_hz;
};

// Flat `key = value` lines; '#' starts a comment. Unknown or repeated keys and
// non-numeric values are ConfigError with the line number.
ParamOverrides parse_config(std::istream& in);
ParamOverrides parse_config_file(const std::filesystem::path& path);

// Defaults, then file values, then flag values. Validated.
bounds::PhysicalParams resolve_params(const ParamOverrides& file, const ParamOverrides& flags);

}  // namespace dqw::witness
