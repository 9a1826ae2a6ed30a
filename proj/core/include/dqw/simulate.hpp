#pragma once

#include "dqw/bounds.hpp"
#include "dqw/dynamics.hpp"
#include "dqw/figures.hpp"
#include "dqw/thermal.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dqw::witness {

enum class SimulationKind { zq, dq, open, ceiling };

SimulationKind parse_simulation_kind(std::string_view name);

// Two-spin model: Zeeman + secular dipolar H, couplings I1x and I2x with base
// rate J(omega_0) from the BPP density, beta from the temperature.
thermal::LindbladModel tissue_davies_model(const bounds::PhysicalParams& params);
thermal::DensityMatrix initial_density(InitialState state, const thermal::LindbladModel& model);
std::vector<double> open_grid(const bounds::PhysicalParams& params, const SimulationOptions& options);

dynamics::Trajectory zq_trajectory(const SimulationOptions& options);
dynamics::Trajectory dq_trajectory(const SimulationOptions& options);
thermal::OpenTrajectory open_trajectory(const bounds::PhysicalParams& params,
                                        const SimulationOptions& options);

// Runs the simulation, writes its CSV to csv when given, returns a JSON summary.
std::string simulate(SimulationKind kind, const bounds::PhysicalParams& params,
                     const SimulationOptions& options, std::ostream* csv);

void write_open_csv(std::ostream& out, const thermal::OpenTrajectory& trajectory);

}  // namespace dqw::witness
