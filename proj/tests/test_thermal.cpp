#include "dqw/algebra.hpp"
#include "dqw/bounds.hpp"
#include "dqw/constants.hpp"
#include "dqw/thermal.hpp"
#include "support.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>

using namespace dqw;
using namespace dqw::thermal;

namespace {

const algebra::TwoSpinOperators& ops() {
  static const auto o = algebra::build_two_spin_operators();
  return o;
}

std::vector<double> grid(double t_max, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  return t;
}

LindbladModel tissue_model() {
  const auto p = bounds::PhysicalParams::tissue_defaults();
  const double rate = bounds::spectral_density(p.omega_0, p.tau_c, p.omega_d * p.omega_d);
  const std::array couplings{Coupling{ops().I1x, rate}, Coupling{ops().I2x, rate}};
  return build_davies_model(zeeman_dipolar_hamiltonian(p.omega_0, p.omega_d), couplings,
                            inverse_temperature(p.temperature));
}

// Small-scale model where a lab-frame oracle is well conditioned.
LindbladModel toy_model(double beta_hbar_omega = 0.8) {
  const double omega_0 = 1.0, omega_d = 0.3;
  const std::array couplings{Coupling{ops().I1x, 0.4}, Coupling{ops().I2x, 0.25}};
  return build_davies_model(zeeman_dipolar_hamiltonian(omega_0, omega_d), couplings,
                            beta_hbar_omega / constants::hbar);
}

// Oracle: lab-frame Liouvillian assembled column by column from the jump terms,
// L(rho) = -i[H, rho] + sum gamma (A rho A^dag - {A^dag A, rho}/2).
Matrix lab_liouvillian(const LindbladModel& m) {
  const Eigen::Index d = m.dim();
  const Matrix& h = m.hamiltonian().matrix();
  Matrix big(d * d, d * d);
  for (Eigen::Index col = 0; col < d * d; ++col) {
    Matrix e = Matrix::Zero(d, d);
    e(col % d, col / d) = 1.0;
    Matrix out = -kI * (h * e - e * h);
    for (const auto& t : m.jump_terms()) {
      const Matrix& a = t.eigenoperator.matrix();
      const Matrix ada = a.adjoint() * a;
      out += t.rate * (a * e * a.adjoint() - 0.5 * (ada * e + e * ada));
    }
    big.col(col) = out.reshaped();
  }
  return big;
}

Matrix random_density(std::mt19937_64& g) { return dqw::testing::random_density(g, 4); }

}  // namespace

// -------------------------------- DensityMatrix ---------------------------------

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(Matrix::Identity(4, 4) / 4.0));
  EXPECT_DQW_ERROR(DensityMatrix(Matrix::Identity(4, 4)), Errc::invalid_state);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_DQW_ERROR(DensityMatrix{neg}, Errc::invalid_state);
  Matrix nh = Matrix::Identity(2, 2) / 2.0;
  nh(0, 1) = 0.1;
  EXPECT_DQW_ERROR(DensityMatrix{nh}, Errc::invalid_state);
}

// -------------------------------- Gibbs state -----------------------------------

TEST(Gibbs, ZeroBetaIsMaximallyMixed) {
  const auto rho = gibbs_state(zeeman_dipolar_hamiltonian(1e9, 1e4), 0.0);
  EXPECT_LT((rho.matrix() - Matrix::Identity(4, 4) / 4.0).norm(), 1e-15);
}

TEST(Gibbs, ZeemanPopulationRatio) {
  // Oracle: scalar Boltzmann exponent from CODATA constants.
  const double omega_0 = 2.0 * 3.141592653589793 * 400e6;
  const double beta = 1.0 / (1.380649e-23 * 310.0);
  const double x = 1.054571817e-34 * omega_0 * beta;
  const auto rho = gibbs_state(OperatorMatrix(omega_0 * ops().Iz_total.matrix(), "Hz"), beta);
  const double ratio = rho.matrix()(0, 0).real() / rho.matrix()(1, 1).real();
  EXPECT_NEAR(ratio, std::exp(-x), 1e-14);
  EXPECT_NEAR(1.0 - ratio, 6.2e-5, 0.05e-5);
  EXPECT_NEAR(rho.matrix()(1, 1).real() / rho.matrix()(3, 3).real(), std::exp(-x), 1e-14);
}

TEST(Gibbs, CommutesWithHamiltonian) {
  auto g = dqw::testing::rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const OperatorMatrix h(dqw::testing::random_hermitian(g, 4), "H");
    const auto rho = gibbs_state(h, 0.7 / constants::hbar);
    EXPECT_LT(commutator(h.matrix(), rho.matrix()).norm(), 1e-10);
  }
}

TEST(Gibbs, LowTemperatureGroundState) {
  const OperatorMatrix h(Matrix(Eigen::Vector4cd(0.0, 1.0, 2.0, 3.5).asDiagonal()), "H");
  const auto rho = gibbs_state(h, 40.0 / constants::hbar);
  EXPECT_GT(rho.matrix()(0, 0).real(), 1.0 - 1e-10);
}

TEST(Gibbs, RejectsNonHermitian) {
  EXPECT_DQW_ERROR(gibbs_state(ops().Kp, 1.0), Errc::non_hermitian_generator);
  EXPECT_DQW_ERROR(gibbs_state(ops().K0, -1.0), Errc::invalid_parameter);
}

// ------------------------------- Davies model -----------------------------------

TEST(Davies, ZeemanCouplingsGiveSingleSpinLadders) {
  const double omega_0 = 1.0;
  const double beta = 0.9 / constants::hbar;
  const OperatorMatrix h(omega_0 * ops().Iz_total.matrix(), "Hz");
  const std::array couplings{Coupling{ops().I1x, 2.0}, Coupling{ops().I2x, 2.0}};
  const auto m = build_davies_model(h, couplings, beta);
  ASSERT_EQ(m.jump_terms().size(), 4u);
  for (const auto& t : m.jump_terms()) {
    EXPECT_NEAR(std::abs(t.bohr_frequency), omega_0, 1e-12);
    const bool spin1 = t.coupling == 0;
    // [H, A] = -w A: lowering operators carry +w0.
    const Matrix& ladder = t.bohr_frequency > 0 ? (spin1 ? ops().I1m : ops().I2m).matrix()
                                                : (spin1 ? ops().I1p : ops().I2p).matrix();
    EXPECT_LT((t.eigenoperator.matrix() - 0.5 * ladder).norm(), 1e-12);
    const double expected = t.bohr_frequency > 0 ? 2.0 : 2.0 * std::exp(-0.9);
    EXPECT_NEAR(t.rate, expected, 1e-12);
  }
  EXPECT_LT(m.kms_defect(), 1e-12);
  EXPECT_LT(m.eigenoperator_defect(), 1e-12);
}

TEST(Davies, TissueScaleEigenoperators) {
  const auto p = bounds::PhysicalParams::tissue_defaults();
  const OperatorMatrix h(p.omega_0 * ops().Iz_total.matrix(), "Hz");
  const std::array couplings{Coupling{ops().I1x, 1.0}};
  const auto m = build_davies_model(h, couplings, inverse_temperature(p.temperature));
  ASSERT_EQ(m.jump_terms().size(), 2u);
  for (const auto& t : m.jump_terms()) {
    EXPECT_NEAR(std::abs(t.bohr_frequency) / p.omega_0, 1.0, 1e-12);
    if (t.bohr_frequency < 0) {
      const double x = constants::hbar * p.omega_0 / (constants::boltzmann * p.temperature);
      EXPECT_NEAR(t.rate, std::exp(-x), 1e-15);
    }
  }
}

TEST(Davies, InfiniteTemperatureRatesEqual) {
  const std::array couplings{Coupling{ops().I1x, 3.0}, Coupling{ops().I2x, 1.5}};
  const auto m = build_davies_model(zeeman_dipolar_hamiltonian(1.0, 0.2), couplings, 0.0);
  for (const auto& t : m.jump_terms()) {
    EXPECT_DOUBLE_EQ(t.rate, t.coupling == 0 ? 3.0 : 1.5);
  }
}

TEST(Davies, DephasingCouplingIsSingleZeroFrequencyTerm) {
  const std::array couplings{Coupling{ops().I1z, 0.7}};
  const auto m = build_davies_model(zeeman_dipolar_hamiltonian(1.0, 0.0), couplings, 1e30);
  ASSERT_EQ(m.jump_terms().size(), 1u);
  EXPECT_EQ(m.jump_terms()[0].bohr_frequency, 0.0);
  EXPECT_DOUBLE_EQ(m.jump_terms()[0].rate, 0.7);
  EXPECT_LT((m.jump_terms()[0].eigenoperator.matrix() - ops().I1z.matrix()).norm(), 1e-12);
}

TEST(Davies, EigenoperatorsSumBackToCoupling) {
  const auto m = tissue_model();
  Matrix sum[2] = {Matrix::Zero(4, 4), Matrix::Zero(4, 4)};
  for (const auto& t : m.jump_terms()) sum[t.coupling] += t.eigenoperator.matrix();
  EXPECT_LT((sum[0] - ops().I1x.matrix()).norm(), 1e-12);
  EXPECT_LT((sum[1] - ops().I2x.matrix()).norm(), 1e-12);
}

TEST(Davies, TissueModelAudits) {
  const auto m = tissue_model();
  EXPECT_LT(m.gibbs_residual(), 1e-10);
  EXPECT_LT(m.kms_defect(), 1e-12);
  EXPECT_LT(m.eigenoperator_defect(), 1e-9);
  EXPECT_LT(m.covariance_defect(), 1e-12);
}

TEST(Davies, NearCoincidentFrequenciesRejected) {
  // Two Bohr frequencies 1e-7 rad/s apart fall into one group but are not one
  // eigenoperator.
  const OperatorMatrix h(Matrix(Eigen::Vector4cd(0.0, 1e-7, 2.0, 5.0).asDiagonal()), "H");
  Matrix x = Matrix::Zero(4, 4);
  x(0, 1) = x(1, 0) = 1.0;
  x(1, 2) = x(2, 1) = 1.0;
  const std::array couplings{Coupling{OperatorMatrix(x, "X"), 1.0}};
  EXPECT_DQW_ERROR(build_davies_model(h, couplings, 0.0), Errc::degenerate_grouping);
}

TEST(Davies, RejectsBadInputs) {
  const std::array bad_rate{Coupling{ops().I1x, 0.0}};
  EXPECT_DQW_ERROR(build_davies_model(ops().K0, bad_rate, 1.0), Errc::invalid_parameter);
  const std::array wrong_dim{Coupling{OperatorMatrix(Matrix::Identity(2, 2)), 1.0}};
  EXPECT_DQW_ERROR(build_davies_model(ops().K0, wrong_dim, 1.0), Errc::dimension_mismatch);
  const std::array ok{Coupling{ops().I1x, 1.0}};
  EXPECT_DQW_ERROR(build_davies_model(ops().Kp, ok, 1.0), Errc::non_hermitian_generator);
}

// -------------------------------- propagation -----------------------------------

TEST(EvolveMaster, MatchesLabFrameExponentialOracle) {
  const auto m = toy_model();
  const Matrix big = lab_liouvillian(m);
  auto g = dqw::testing::rng(43);
  const DensityMatrix rho0(random_density(g));
  const std::vector<double> times{0.0, 0.4, 1.5, 4.0, 9.0};
  const auto traj = evolve_master(m, rho0, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Matrix prop = (Matrix(big * times[i])).exp();
    const Vector v = prop * rho0.matrix().reshaped();
    const Matrix expect = v.reshaped(4, 4);
    EXPECT_LT((traj.states[i].matrix() - expect).norm(), 1e-10) << "t=" << times[i];
  }
}

TEST(EvolveMaster, LiouvillianMatchesOracleInEigenbasis) {
  const auto m = toy_model();
  const Matrix big = lab_liouvillian(m);
  auto g = dqw::testing::rng(44);
  const Matrix rho = random_density(g);
  const Matrix lab = Vector(big * rho.reshaped()).reshaped(4, 4);
  const Matrix via_model = m.to_lab(m.apply_eigen(m.to_eigenbasis(rho)));
  EXPECT_LT((lab - via_model).norm(), 1e-12);
}

TEST(EvolveMaster, GibbsIsStationary) {
  const auto m = tissue_model();
  const auto rho_th = m.gibbs_state();
  const auto traj = evolve_master(m, rho_th, grid(20.0, 81));
  for (const auto& s : traj.states) EXPECT_LT((s.matrix() - rho_th.matrix()).norm(), 1e-10);
}

TEST(EvolveMaster, UpUpRelaxesMonotonically) {
  const auto m = tissue_model();
  const auto traj = evolve_master(m, DensityMatrix::pure(Vector::Unit(4, 0)), grid(400.0, 401));
  const auto& s = traj.relative_entropies;
  EXPECT_NEAR(s.front(), std::log(4.0), 1e-3);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1] > 1e-12) {
      EXPECT_LT(s[i], s[i - 1]) << "step " << i;
    } else {
      EXPECT_LE(s[i], s[i - 1] + 1e-12) << "step " << i;
    }
  }
  EXPECT_LT(s.back(), 1e-8);
}

TEST(EvolveMaster, NoDqCoherenceFromSingleSpinCouplings) {
  auto g = dqw::testing::rng(45);
  const auto m = tissue_model();
  for (int trial = 0; trial < 10; ++trial) {
    Vector psi = dqw::testing::random_state(g, 4);
    Vector phi = dqw::testing::random_state(g, 4);
    psi(0) = 0.0;
    phi(3) = 0.0;
    psi.normalize();
    phi.normalize();
    const Matrix rho = 0.5 * (psi * psi.adjoint() + phi * phi.adjoint());
    const auto traj = evolve_master(m, DensityMatrix(rho), grid(10.0, 41));
    for (double a : traj.dq_amplitudes) EXPECT_LT(a, 1e-12);
  }
}

TEST(EvolveMaster, PropertySpohnMonotonicityAndTrace) {
  auto g = dqw::testing::rng(46);
  const auto m = tissue_model();
  const auto times = grid(15.0, 121);
  for (int trial = 0; trial < 50; ++trial) {
    const auto traj = evolve_master(m, DensityMatrix(random_density(g)), times);
    for (std::size_t i = 1; i < times.size(); ++i) {
      EXPECT_LE(traj.relative_entropies[i], traj.relative_entropies[i - 1] + 1e-9);
    }
    for (const auto& s : traj.states) EXPECT_LT(std::abs(s.matrix().trace() - 1.0), 1e-10);
    for (double v : traj.relative_entropies) EXPECT_GE(v, 0.0);
  }
}

TEST(EvolveMaster, GridValidation) {
  const auto m = toy_model();
  const auto rho = DensityMatrix::maximally_mixed(4);
  const std::vector<double> backwards{0.0, 2.0, 1.0};
  EXPECT_DQW_ERROR(evolve_master(m, rho, backwards), Errc::invalid_grid);
  const std::vector<double> negative{-1.0, 0.0};
  EXPECT_DQW_ERROR(evolve_master(m, rho, negative), Errc::invalid_grid);
  EXPECT_DQW_ERROR(evolve_master(m, DensityMatrix::maximally_mixed(2), grid(1.0, 3)),
                   Errc::dimension_mismatch);
}

// ------------------------------- relative entropy --------------------------------

TEST(RelativeEntropy, IdenticalStatesGiveZero) {
  auto g = dqw::testing::rng(47);
  const DensityMatrix rho(random_density(g));
  EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-12);
}

TEST(RelativeEntropy, PureAgainstMaximallyMixedIsLogD) {
  const auto pure = DensityMatrix::pure(Vector::Unit(4, 2));
  EXPECT_NEAR(relative_entropy(pure, DensityMatrix::maximally_mixed(4)), std::log(4.0), 1e-12);
  EXPECT_NEAR(std::log(4.0), 1.3863, 1e-4);
}

TEST(RelativeEntropy, SupportViolation) {
  EXPECT_DQW_ERROR(relative_entropy(DensityMatrix::maximally_mixed(4),
                                    DensityMatrix::pure(Vector::Unit(4, 0))),
                   Errc::support_violation);
}

TEST(RelativeEntropy, DiagonalClosedForm) {
  // Oracle: commuting states reduce to the classical KL divergence.
  const Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4), q(0.25, 0.25, 0.4, 0.1);
  double kl = 0.0;
  for (int i = 0; i < 4; ++i) kl += p(i) * std::log(p(i) / q(i));
  const DensityMatrix rp(Matrix(p.cast<cplx>().asDiagonal()));
  const DensityMatrix rq(Matrix(q.cast<cplx>().asDiagonal()));
  EXPECT_NEAR(relative_entropy(rp, rq), kl, 1e-13);
}

// ---------------------------------- ceiling --------------------------------------

TEST(Ceiling, GibbsPairCorrelationMatchesPerturbativeEstimate) {
  // Oracle: tanh^2(x/2)/4 from the Zeeman term, -eps_th/8 at first order in the
  // dipolar term.
  const auto p = bounds::PhysicalParams::tissue_defaults();
  const double x = constants::hbar * p.omega_0 / (constants::boltzmann * p.temperature);
  const double t = std::tanh(0.5 * x);
  const double estimate = 0.25 * t * t - bounds::epsilon_th(p) / 8.0;
  const auto m = tissue_model();
  EXPECT_NEAR(pair_correlation(m.gibbs_state()) / estimate, 1.0, 1e-2);
}

TEST(Ceiling, FromMaximallyMixedStaysBelow) {
  const auto m = tissue_model();
  const auto scan = ceiling_scan(m, DensityMatrix::maximally_mixed(4), grid(30.0, 301));
  EXPECT_TRUE(scan.below_ceiling);
  EXPECT_LE(scan.max_pair_correlation, scan.gibbs_pair_correlation + 1e-10);
  EXPECT_GT(scan.gibbs_pair_correlation, 0.0);
}

TEST(Ceiling, FromGibbsEqualsGibbs) {
  const auto m = tissue_model();
  const auto scan = ceiling_scan(m, m.gibbs_state(), grid(30.0, 301));
  EXPECT_TRUE(scan.below_ceiling);
  EXPECT_NEAR(scan.max_pair_correlation, scan.gibbs_pair_correlation, 1e-12);
}

TEST(Ceiling, PreconditionEnforced) {
  const auto m = tissue_model();
  EXPECT_DQW_ERROR(ceiling_scan(m, DensityMatrix::pure(Vector::Unit(4, 0)), grid(1.0, 5)),
                   Errc::precondition_violated);
}

TEST(Ceiling, PropertyBelowCeilingStatesRelaxToGibbsValue) {
  auto g = dqw::testing::rng(48);
  const auto m = toy_model(0.5);
  const double gibbs = pair_correlation(m.gibbs_state());
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 30; ++trial) {
    const DensityMatrix rho(random_density(g));
    if (pair_correlation(rho) > gibbs) continue;
    ++checked;
    const auto scan = ceiling_scan(m, rho, grid(400.0, 201));
    EXPECT_EQ(scan.gibbs_pair_correlation, gibbs);
    EXPECT_NEAR(scan.trajectory.pair_correlations.back(), gibbs, 1e-6);
  }
  EXPECT_GE(checked, 10);
}
