#include "dqw/thermal.hpp"

#include "dqw/algebra.hpp"
#include "dqw/constants.hpp"
#include "dqw/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace dqw::thermal {

namespace {

constexpr double kSupportFloor = 1e-14;
constexpr double kClipLimit = 1e-8;

const algebra::TwoSpinOperators& two_spin() {
  static const algebra::TwoSpinOperators ops = algebra::build_two_spin_operators();
  return ops;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void require_hermitian_generator(const OperatorMatrix& h, const char* where) {
  if (hermiticity_defect(h.matrix()) > 1e-10) {
    throw Error(Errc::non_hermitian_generator, std::string(where) + ": '" + h.label() + "'");
  }
}

Eigen::VectorXd boltzmann_weights(const Eigen::VectorXd& energies, double beta) {
  const double ground = energies.minCoeff();
  Eigen::VectorXd p(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    p(i) = std::exp(-beta * constants::hbar * (energies(i) - ground));
  }
  return p / p.sum();
}

Matrix vec(const Matrix& m) { return m.reshaped(m.size(), 1); }

Matrix unvec(const Vector& v, Eigen::Index dim) { return v.reshaped(dim, dim); }

}  // namespace

// ------------------------------- DensityMatrix ----------------------------------

DensityMatrix::DensityMatrix(Matrix entries, double tol) : rho_(std::move(entries)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw Error(Errc::invalid_state, "density matrix must be square and non-empty");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw Error(Errc::invalid_state, "density matrix is not Hermitian");
  }
  rho_ = hermitize(rho_);
  if (std::abs(rho_.trace() - 1.0) > tol) {
    throw Error(Errc::invalid_state, "density matrix trace differs from 1");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -tol) {
    throw Error(Errc::invalid_state, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const Vector unit = psi / psi.norm();
  return DensityMatrix(unit * unit.adjoint());
}

double inverse_temperature(double kelvin) {
  if (!(kelvin > 0.0)) {
    throw Error(Errc::invalid_parameter, "temperature must be positive");
  }
  return 1.0 / (constants::boltzmann * kelvin);
}

DensityMatrix gibbs_state(const OperatorMatrix& hamiltonian, double beta) {
  require_hermitian_generator(hamiltonian, "gibbs_state");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::invalid_parameter, "inverse temperature must be finite and >= 0");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(hermitize(hamiltonian.matrix()));
  const Eigen::VectorXd p = boltzmann_weights(eig.eigenvalues(), beta);
  const Matrix& u = eig.eigenvectors();
  return DensityMatrix(u * p.cast<cplx>().asDiagonal() * u.adjoint());
}

OperatorMatrix zeeman_dipolar_hamiltonian(double omega_0, double omega_d) {
  const auto& op = two_spin();
  const Matrix h = omega_0 * op.Iz_total.matrix() +
                   omega_d * (2.0 * op.IzIz.matrix() - 0.5 * (op.Sp.matrix() + op.Sm.matrix()));
  return OperatorMatrix(h, "H_S");
}

// ------------------------------- LindbladModel ----------------------------------

LindbladModel::LindbladModel(OperatorMatrix hamiltonian, std::vector<JumpTerm> terms, double beta,
                             Eigen::VectorXd energies, Matrix eigenvectors)
    : hamiltonian_(std::move(hamiltonian)),
      terms_(std::move(terms)),
      beta_(beta),
      energies_(std::move(energies)),
      eigenvectors_(std::move(eigenvectors)) {
  const Eigen::Index d = dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix e = energies_.cast<cplx>().asDiagonal();
  coherent_ = -kI * (kron(id, e) - kron(e, id));
  dissipator_ = Matrix::Zero(d * d, d * d);
  for (const auto& term : terms_) {
    const Matrix a = to_eigenbasis(term.eigenoperator.matrix());
    const Matrix ada = a.adjoint() * a;
    dissipator_ += term.rate * (kron(a.conjugate(), a) - 0.5 * kron(id, ada) -
                                0.5 * kron(ada.transpose(), id));
  }
}

Matrix LindbladModel::to_eigenbasis(const Matrix& lab) const {
  return eigenvectors_.adjoint() * lab * eigenvectors_;
}

Matrix LindbladModel::to_lab(const Matrix& eigen) const {
  return eigenvectors_ * eigen * eigenvectors_.adjoint();
}

Matrix LindbladModel::apply_eigen(const Matrix& rho_eigen) const {
  return unvec(liouvillian() * vec(rho_eigen), dim());
}

Eigen::VectorXd LindbladModel::gibbs_populations() const {
  return boltzmann_weights(energies_, beta_);
}

DensityMatrix LindbladModel::gibbs_state() const {
  return DensityMatrix(to_lab(gibbs_populations().cast<cplx>().asDiagonal()));
}

double LindbladModel::gibbs_residual() const {
  const Matrix rho = gibbs_populations().cast<cplx>().asDiagonal();
  return apply_eigen(rho).norm();
}

double LindbladModel::kms_defect() const {
  double worst = 0.0;
  for (const auto& down : terms_) {
    if (!(down.bohr_frequency > 0.0)) continue;
    bool paired = false;
    for (const auto& up : terms_) {
      if (up.coupling != down.coupling || up.bohr_frequency != -down.bohr_frequency) continue;
      paired = true;
      const double expected = std::exp(-beta_ * constants::hbar * down.bohr_frequency) * down.rate;
      worst = std::max(worst, std::abs(up.rate / expected - 1.0));
    }
    if (!paired) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

double LindbladModel::eigenoperator_defect() const {
  const Matrix& h = hamiltonian_.matrix();
  const double scale = std::max(1.0, h.norm());
  double worst = 0.0;
  for (const auto& term : terms_) {
    const Matrix& a = term.eigenoperator.matrix();
    const Matrix r = commutator(h, a) + term.bohr_frequency * a;
    worst = std::max(worst, r.norm() / (scale * a.norm()));
  }
  return worst;
}

double LindbladModel::covariance_defect() const {
  const double denom = coherent_.norm() * dissipator_.norm();
  if (denom == 0.0) return 0.0;
  return (coherent_ * dissipator_ - dissipator_ * coherent_).norm() / denom;
}

LindbladModel build_davies_model(const OperatorMatrix& hamiltonian,
                                 std::span<const Coupling> couplings, double beta,
                                 const DaviesOptions& options) {
  require_hermitian_generator(hamiltonian, "build_davies_model");
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::invalid_parameter, "inverse temperature must be finite and >= 0");
  }
  const Eigen::Index d = hamiltonian.dim();
  const Matrix h = hermitize(hamiltonian.matrix());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd& energies = eig.eigenvalues();
  const Matrix& u = eig.eigenvectors();

  // Eigenvalue noise scales with ||H||; never group tighter than that.
  const double spread = energies.cwiseAbs().maxCoeff();
  const double tol = std::max(options.grouping_tolerance,
                              64.0 * std::numeric_limits<double>::epsilon() * spread);
  const double consistency = 1e-9 * std::max(1.0, spread);

  // Cluster |omega_mn| = |e_n - e_m| by single linkage.
  std::vector<double> gaps;
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = 0; n < d; ++n) gaps.push_back(std::abs(energies(n) - energies(m)));
  std::sort(gaps.begin(), gaps.end());
  std::vector<std::pair<double, double>> clusters;  // [lo, hi]
  for (double g : gaps) {
    if (clusters.empty() || g - clusters.back().second > tol) {
      clusters.emplace_back(g, g);
    } else {
      clusters.back().second = g;
    }
  }

  std::vector<JumpTerm> terms;
  for (std::size_t ci = 0; ci < couplings.size(); ++ci) {
    const Coupling& coupling = couplings[ci];
    if (coupling.op.dim() != d) {
      throw Error(Errc::dimension_mismatch, "coupling '" + coupling.op.label() + "'");
    }
    if (!(coupling.base_rate > 0.0)) {
      throw Error(Errc::invalid_parameter, "coupling base rates must be positive");
    }
    const Matrix a_eig = u.adjoint() * coupling.op.matrix() * u;
    const double a_norm = a_eig.norm();

    for (std::size_t k = 0; k < clusters.size(); ++k) {
      const auto [lo, hi] = clusters[k];
      const bool zero_cluster = k == 0;  // gaps include e_m - e_m = 0
      std::vector<double> members;
      for (double g : gaps)
        if (g >= lo && g <= hi) members.push_back(g);
      const double nu =
          zero_cluster ? 0.0 : std::accumulate(members.begin(), members.end(), 0.0) / members.size();

      for (int sign : {+1, -1}) {
        if (zero_cluster && sign < 0) break;
        Matrix part = Matrix::Zero(d, d);
        for (Eigen::Index m = 0; m < d; ++m)
          for (Eigen::Index n = 0; n < d; ++n) {
            const double w = energies(n) - energies(m);  // n -> m releases w
            const bool in_cluster =
                zero_cluster ? std::abs(w) <= hi : (sign * w >= lo && sign * w <= hi);
            if (in_cluster) part(m, n) = a_eig(m, n);
          }
        const double part_norm = part.norm();
        if (part_norm <= 1e-14 * std::max(1e-300, a_norm)) continue;

        const double omega = sign * nu;
        // [E, A] = -omega A component-wise in the eigenbasis
        double defect = 0.0;
        for (Eigen::Index m = 0; m < d; ++m)
          for (Eigen::Index n = 0; n < d; ++n)
            defect += std::norm((energies(m) - energies(n) + omega) * part(m, n));
        if (std::sqrt(defect) > consistency * part_norm) {
          throw Error(Errc::degenerate_grouping,
                      "Bohr frequencies within the grouping tolerance give an inconsistent "
                      "eigenoperator for coupling '" +
                          coupling.op.label() + "'");
        }

        const double rate = omega >= 0.0
                                ? coupling.base_rate
                                : coupling.base_rate * std::exp(-beta * constants::hbar * nu);
        terms.push_back(JumpTerm{
            OperatorMatrix(u * part * u.adjoint(), coupling.op.label() + "(" +
                                                       std::to_string(omega) + ")"),
            omega, rate, ci});
      }
    }
  }
  return LindbladModel(OperatorMatrix(h, hamiltonian.label()), std::move(terms), beta, energies, u);
}

// --------------------------------- propagation ----------------------------------

double pair_correlation(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(Errc::dimension_mismatch, "pair correlation is defined for two spins");
  }
  const Matrix& zz = two_spin().IzIz.matrix();
  return rho.expectation(zz).real() - zz.trace().real() / 4.0;
}

double dq_amplitude(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(Errc::dimension_mismatch, "DQ amplitude is defined for two spins");
  }
  return std::abs(rho.expectation(two_spin().Kp.matrix()));
}

OpenTrajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0,
                             std::span<const double> times) {
  const Eigen::Index d = model.dim();
  if (rho0.dim() != d) {
    throw Error(Errc::dimension_mismatch, "evolve_master: state and model sizes differ");
  }
  if (times.empty()) throw Error(Errc::invalid_grid, "evolve_master: empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i]) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw Error(Errc::invalid_grid,
                  "evolve_master: times must be finite, non-negative and strictly increasing");
    }
  }

  const Eigen::VectorXcd coherent_rates = model.coherent_superoperator().diagonal();
  const Matrix& dissipator = model.dissipator_superoperator();
  std::vector<std::pair<double, Matrix>> cache;
  auto dissipative_step = [&](double dt) -> const Matrix& {
    for (const auto& [key, prop] : cache) {
      if (std::abs(key - dt) <= 1e-12 * dt) return prop;
    }
    cache.emplace_back(dt, (dissipator * dt).exp());
    return cache.back().second;
  };

  const DensityMatrix gibbs_eig(model.gibbs_populations().cast<cplx>().asDiagonal());
  OpenTrajectory out;
  out.times.assign(times.begin(), times.end());

  Vector state = vec(model.to_eigenbasis(rho0.matrix()));
  double now = 0.0;
  for (double t : times) {
    const double dt = t - now;
    if (dt > 0.0) {
      state = dissipative_step(dt) * state;
      // L_H is diagonal and commutes with the Davies dissipator.
      for (Eigen::Index i = 0; i < state.size(); ++i) state(i) *= std::exp(coherent_rates(i) * dt);
      now = t;
    }

    Matrix rho_e = hermitize(unvec(state, d));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(rho_e);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < -kClipLimit) {
      throw Error(Errc::positivity_breakdown,
                  "evolve_master: eigenvalue " + std::to_string(lowest) + " at t = " +
                      std::to_string(t));
    }
    if (lowest < -1e-12) {
      const double trace = rho_e.trace().real();
      Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
      lambda *= trace / lambda.sum();
      rho_e = eig.eigenvectors() * lambda.cast<cplx>().asDiagonal() * eig.eigenvectors().adjoint();
      state = vec(rho_e);
      ++out.clipped_states;
      out.max_clip = std::max(out.max_clip, -lowest);
    }

    const DensityMatrix current_eig(rho_e);
    out.relative_entropies.push_back(relative_entropy(current_eig, gibbs_eig));
    out.states.emplace_back(model.to_lab(rho_e));
    if (d == 4) {
      out.dq_amplitudes.push_back(dq_amplitude(out.states.back()));
      out.pair_correlations.push_back(pair_correlation(out.states.back()));
    }
  }
  return out;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(Errc::dimension_mismatch, "relative_entropy: sizes differ");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> rho_eig(rho.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Matrix> sigma_eig(sigma.matrix());
  const Matrix& w = sigma_eig.eigenvectors();
  const Eigen::VectorXd& s = sigma_eig.eigenvalues();

  double entropy_term = 0.0;
  for (Eigen::Index i = 0; i < rho_eig.eigenvalues().size(); ++i) {
    const double r = rho_eig.eigenvalues()(i);
    if (r > kSupportFloor) entropy_term += r * std::log(r);
  }
  double cross_term = 0.0;
  double outside_support = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double weight = w.col(j).dot(rho.matrix() * w.col(j)).real();
    if (s(j) > kSupportFloor) {
      cross_term += weight * std::log(s(j));
    } else {
      outside_support += weight;
    }
  }
  if (outside_support > kSupportFloor) {
    throw Error(Errc::support_violation,
                "relative_entropy: rho has weight outside the support of sigma");
  }
  return std::max(0.0, entropy_term - cross_term);
}

CeilingScan ceiling_scan(const LindbladModel& model, const DensityMatrix& rho0,
                         std::span<const double> times) {
  CeilingScan scan;
  scan.gibbs_pair_correlation = pair_correlation(model.gibbs_state());
  const double initial = pair_correlation(rho0);
  if (initial > scan.gibbs_pair_correlation + 1e-12) {
    throw Error(Errc::precondition_violated,
                "ceiling_scan: initial pair correlation exceeds the Gibbs value");
  }
  scan.trajectory = evolve_master(model, rho0, times);
  scan.max_pair_correlation = std::max(
      initial, *std::max_element(scan.trajectory.pair_correlations.begin(),
                                 scan.trajectory.pair_correlations.end()));
  scan.below_ceiling = scan.max_pair_correlation <= scan.gibbs_pair_correlation + 1e-10;
  return scan;
}

}  // namespace dqw::thermal
