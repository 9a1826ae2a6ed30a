#pragma once

#include "dqw/operator.hpp"

#include <span>
#include <vector>

namespace dqw::thermal {

class DensityMatrix {
 public:
  // Validates Hermiticity and unit trace within tol and eigenvalues >= -tol.
  explicit DensityMatrix(Matrix entries, double tol = 1e-12);

  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix pure(const Vector& psi);

  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const Matrix& matrix() const noexcept { return rho_; }
  cplx expectation(const Matrix& op) const { return (rho_ * op).trace(); }

 private:
  Matrix rho_;
};

// 1 / (k_B T) in 1/J; Boltzmann factors use exp(-beta hbar omega).
double inverse_temperature(double kelvin);

// exp(-beta hbar H) / Z with H in rad/s.
DensityMatrix gibbs_state(const OperatorMatrix& hamiltonian, double beta);

// Zeeman plus secular dipolar coupling:
// omega_0 (I1z + I2z) + omega_d (2 I1z I2z - (I1+ I2- + I1- I2+)/2)
OperatorMatrix zeeman_dipolar_hamiltonian(double omega_0, double omega_d);

struct Coupling {
  OperatorMatrix op;
  double base_rate = 0.0;  // 1/s, the downward (emission) rate
};

struct JumpTerm {
  OperatorMatrix eigenoperator;  // lab basis; [H, A] = -omega A
  double bohr_frequency = 0.0;   // rad/s
  double rate = 0.0;             // 1/s
  std::size_t coupling = 0;      // index into the couplings it came from
};

// Davies generator of a stationary thermal bath. Everything is also kept in the
// energy eigenbasis of H, where the coherent part is diagonal and the Gibbs
// state is exact; propagation and fixed-point checks run there.
class LindbladModel {
 public:
  LindbladModel(OperatorMatrix hamiltonian, std::vector<JumpTerm> terms, double beta,
                Eigen::VectorXd energies, Matrix eigenvectors);

  const OperatorMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<JumpTerm>& jump_terms() const noexcept { return terms_; }
  double beta() const noexcept { return beta_; }
  Eigen::Index dim() const noexcept { return hamiltonian_.dim(); }

  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Matrix& eigenvectors() const noexcept { return eigenvectors_; }

  Matrix to_eigenbasis(const Matrix& lab) const;
  Matrix to_lab(const Matrix& eigen) const;

  // Column-stacked superoperators in the energy eigenbasis.
  const Matrix& coherent_superoperator() const noexcept { return coherent_; }
  const Matrix& dissipator_superoperator() const noexcept { return dissipator_; }
  Matrix liouvillian() const { return coherent_ + dissipator_; }

  // L(rho) for rho given in the energy eigenbasis.
  Matrix apply_eigen(const Matrix& rho_eigen) const;

  // Gibbs state diagonal in the energy eigenbasis.
  Eigen::VectorXd gibbs_populations() const;
  DensityMatrix gibbs_state() const;

  // ||L(rho_th)||_F
  double gibbs_residual() const;
  // max over paired terms |gamma(-w) / (exp(-beta hbar w) gamma(w)) - 1|
  double kms_defect() const;
  // max ||[H, A] + w A||_F / (max(1, ||H||_F) ||A||_F)
  double eigenoperator_defect() const;
  // ||[L_H, L_D]||_F / (||L_H||_F ||L_D||_F)
  double covariance_defect() const;

 private:
  OperatorMatrix hamiltonian_;
  std::vector<JumpTerm> terms_;
  double beta_;
  Eigen::VectorXd energies_;
  Matrix eigenvectors_;
  Matrix coherent_;
  Matrix dissipator_;
};

struct DaviesOptions {
  double grouping_tolerance = 1e-6;  // rad/s, widened to ~64 ulp of ||H|| when larger
};

// Decomposes every coupling into eigenoperators of H and assigns KMS rates:
// gamma(w) = base for w >= 0, gamma(-w) = exp(-beta hbar w) base.
LindbladModel build_davies_model(const OperatorMatrix& hamiltonian,
                                 std::span<const Coupling> couplings, double beta,
                                 const DaviesOptions& options = {});

struct OpenTrajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;        // lab basis
  std::vector<double> relative_entropies;   // S(rho(t) || rho_th), nats
  std::vector<double> dq_amplitudes;        // |tr(rho K+)|, two-spin models only
  std::vector<double> pair_correlations;    // tr(rho I1zI2z) - tr(I1zI2z)/4, two-spin only
  std::size_t clipped_states = 0;           // states whose negative eigenvalues were clipped
  double max_clip = 0.0;
};

// rho0 is the state at t = 0; times must be non-negative and strictly
// increasing. Negative eigenvalues up to 1e-8 are clipped and counted;
// beyond that PositivityBreakdown.
OpenTrajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0,
                             std::span<const double> times);

// S(rho || sigma) = tr rho (log rho - log sigma), eigenvalue floor 1e-14.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

struct CeilingScan {
  double max_pair_correlation = 0.0;
  double gibbs_pair_correlation = 0.0;
  bool below_ceiling = false;
  OpenTrajectory trajectory;
};

// Requires rho0's pair correlation not to exceed the Gibbs value
// (PreconditionViolated otherwise).
CeilingScan ceiling_scan(const LindbladModel& model, const DensityMatrix& rho0,
                         std::span<const double> times);

// tr(rho I1zI2z) relative to the infinite-temperature value (4x4 only).
double pair_correlation(const DensityMatrix& rho);
double dq_amplitude(const DensityMatrix& rho);

}  // namespace dqw::thermal
