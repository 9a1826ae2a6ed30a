#include "dqw/config.hpp"

#include "dqw/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <utility>

namespace dqw::witness {

namespace {

using Field = std::optional<double> ParamOverrides::*;

constexpr std::array<std::pair<std::string_view, Field>, 6> kKeys{{
    {"omega_d_hz", &ParamOverrides::omega_d_hz},
    {"omega_d_static_hz", &ParamOverrides::omega_d_static_hz},
    {"temperature_k", &ParamOverrides::temperature_k},
    {"mixing_time_s", &ParamOverrides::mixing_time_s},
    {"tau_c_s", &ParamOverrides::tau_c_s},
    {"larmor_hz", &ParamOverrides::larmor_hz},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

}  // namespace

ParamOverrides parse_config(std::istream& in) {
  ParamOverrides out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    const std::string where = "config line " + std::to_string(line) + ": ";
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::config_error, where + "expected key = value");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));

    Field field = nullptr;
    for (const auto& [name, member] : kKeys) {
      if (name == key) field = member;
    }
    if (field == nullptr) throw Error(Errc::config_error, where + "unknown key '" + std::string(key) + "'");
    if ((out.*field).has_value()) {
      throw Error(Errc::config_error, where + "duplicate key '" + std::string(key) + "'");
    }

    double number = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, number);
    if (value.empty() || ec != std::errc() || ptr != end || std::isnan(number)) {
      throw Error(Errc::config_error, where + "'" + std::string(key) + "' needs a number");
    }
    out.*field = number;
  }
  return out;
}

ParamOverrides parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config '" + path.string() + "'");
  return parse_config(in);
}

bounds::PhysicalParams resolve_params(const ParamOverrides& file, const ParamOverrides& flags) {
  ParamOverrides merged = file;
  for (const auto& entry : kKeys) {
    if ((flags.*entry.second).has_value()) merged.*entry.second = flags.*entry.second;
  }
  auto params = bounds::PhysicalParams::tissue_defaults();
  if (merged.omega_d_hz) params.omega_d = bounds::hz_to_rad(*merged.omega_d_hz);
  if (merged.omega_d_static_hz) params.omega_d_static = bounds::hz_to_rad(*merged.omega_d_static_hz);
  if (merged.temperature_k) params.temperature = *merged.temperature_k;
  if (merged.mixing_time_s) params.mixing_time = *merged.mixing_time_s;
  if (merged.tau_c_s) params.tau_c = *merged.tau_c_s;
  if (merged.larmor_hz) params.omega_0 = bounds::hz_to_rad(*merged.larmor_hz);
  params.validate();
  return params;
}

}  // namespace dqw::witness
