#pragma once

#include "dqw/operator.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dqw::dynamics {

class StateVector {
 public:
  explicit StateVector(Vector amplitudes, double norm_tolerance = 1e-12);

  // Computational basis vector |index> of the given dimension.
  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm_tolerance() const noexcept { return norm_tolerance_; }

 private:
  Vector amplitudes_;
  double norm_tolerance_;
};

enum class Representation { two_spin, su11_truncated };

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  // values[o][t] is the expectation of observable o at times[t].
  std::vector<std::vector<cplx>> values;
  Representation representation = Representation::two_spin;

  // su11_truncated only: max over reported times of the top-level population,
  // the truncation dimension N actually used, and max |s_N - s_{N/2}| when a
  // doubling check was performed.
  std::optional<double> truncation_tail;
  std::optional<int> truncation_dim;
  std::optional<double> consistency_delta;

  // max_t | ||psi(t)|| - 1 |
  double max_norm_drift = 0.0;

  std::size_t index_of(const std::string& name) const;
  std::vector<double> real_series(const std::string& name) const;
  std::vector<double> real_series(std::size_t index) const;
};

// Exact unitary evolution psi(t) = exp(-i H t) psi0 through the eigendecomposition
// of H. psi0 is the state at t = 0; times must be strictly increasing.
Trajectory propagate(const OperatorMatrix& hamiltonian, const StateVector& psi0,
                     std::span<const double> times,
                     std::span<const OperatorMatrix> observables);

// ----------------------- truncated discrete-series SU(1,1) ---------------------

// Lowest-weight representation with Bargmann index k truncated to levels
// n = 0..N: K0|n> = (n + k)|n>, <n+1|K+|n> = sqrt((n + 1)(n + 2k)).
class Su11Rep {
 public:
  Su11Rep(double k, int truncation);

  double k() const noexcept { return k_; }
  int truncation() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return n_ + 1; }
  // <n+1|K+|n> for n = 0..N-1
  const std::vector<double>& ladder() const noexcept { return ladder_; }

  OperatorMatrix kplus() const;
  OperatorMatrix kminus() const;
  OperatorMatrix k0() const;

  // max entry of |[K-, K+] - 2 K0| on the lower N x N block (levels 0..N-1).
  double commutator_defect() const;

 private:
  double k_;
  int n_;
  std::vector<double> ladder_;
};

Su11Rep build_su11_rep(double k, int truncation);

struct HyperbolicOptions {
  double tail_bound = 1e-8;
  int max_dim = 4096;
};

// Evolves the vacuum |0> under H = g (K+ + K-) and reports the pair signal
// s(t) = <K0(t)> - k ("pair_signal") and the top-level population
// ("truncation_tail"). The truncation doubles from rep.truncation() until the
// tail stays below tail_bound; the reported run uses the next doubling, which
// also yields consistency_delta. Throws TruncationExceeded beyond max_dim.
Trajectory hyperbolic_signal(const Su11Rep& rep, double g, std::span<const double> times,
                             const HyperbolicOptions& options = {});

// ------------------------------ growth classifier ------------------------------

enum class GrowthClass { bounded_oscillatory, hyperbolic, unclassified };

struct GrowthReport {
  GrowthClass classification = GrowthClass::unclassified;
  std::vector<double> window_envelopes;
  // least-squares slope of log|s| over the final half, and its relative residual
  std::optional<double> fitted_rate;
  std::optional<double> fit_relative_residual;
};

struct GrowthOptions {
  int windows = 4;
  double envelope_slack = 0.05;
  double max_fit_residual = 0.1;
};

// Needs at least 16 samples (InsufficientSamples). Bounded if each window's max
// |s| is at most (1 + slack) times the previous one; hyperbolic if log|s| over
// the final half is linear with positive slope.
GrowthReport classify_growth(const Trajectory& trajectory, std::size_t observable = 0,
                             const GrowthOptions& options = {});

std::string to_string(GrowthClass cls);

// time_s, then the real part of each observable.
void write_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace dqw::dynamics
