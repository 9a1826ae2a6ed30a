#pragma once

#include <numbers>

namespace dqw::constants {

// CODATA 2018 exact values.
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double boltzmann = 1.380649e-23;    // J / K
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace dqw::constants
