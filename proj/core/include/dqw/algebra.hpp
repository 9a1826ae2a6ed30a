#pragma once

#include "dqw/operator.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dqw::algebra {

// ------------------------------ two-spin operators ----------------------------

// Zeeman product basis ordering used by every 4x4 operator in the library.
enum ZeemanState : Eigen::Index { up_up = 0, up_down = 1, down_up = 2, down_down = 3 };

struct TwoSpinOperators {
  OperatorMatrix I1z, I2z;
  OperatorMatrix I1x, I2x;
  OperatorMatrix I1p, I1m, I2p, I2m;
  // double-quantum pair operators: K+ = I1+ I2+, K- = I1- I2-, K0 = (I1z + I2z)/2
  OperatorMatrix Kp, Km, K0;
  // zero-quantum flip-flop operators: S+ = I1+ I2-, S- = I1- I2+, S0 = (I1z - I2z)/2
  OperatorMatrix Sp, Sm, S0;
  OperatorMatrix Iz_total;
  OperatorMatrix IzIz;  // I1z I2z
};

TwoSpinOperators build_two_spin_operators();

// Integer p with [Iz_total, op] = p op. Throws NotEigenoperator when the
// commutator residual exceeds tol * max(1, ||op||), or op vanishes.
int coherence_order(const OperatorMatrix& op, const OperatorMatrix& iz_total,
                    double tol = 1e-10);
// Same, with the two-spin total Iz (4x4 operators only).
int coherence_order(const OperatorMatrix& op, double tol = 1e-10);

// ----------------------------- structure constants ----------------------------

// Rank-3 tensor c(i, j, k) with [e_i, e_j] = sum_k c(i, j, k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), data_(n * n * n, cplx{0.0, 0.0}) {}

  std::size_t size() const noexcept { return n_; }
  cplx operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  cplx& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * n_ + j) * n_ + k];
  }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

struct SectorBasis {
  std::vector<std::string> labels;
  // Empty for abstract bases defined only through their constants.
  std::vector<OperatorMatrix> elements;
  // nullopt for elements that are not coherence-order eigenoperators.
  std::vector<std::optional<int>> coherence_orders;
  StructureConstants constants;
  double closure_residual = 0.0;

  std::size_t size() const noexcept { return labels.size(); }
  bool has_matrices() const noexcept { return !elements.empty(); }
  bool closed(double tol = 1e-10) const noexcept { return closure_residual < tol; }
  std::size_t index_of(const std::string& label) const;
};

// Least-squares projection of every commutator onto span(elements). The Gram
// matrix must have condition number below 1e10 (LinearlyDependentBasis).
SectorBasis measure_structure_constants(std::span<const OperatorMatrix> elements);

enum class AbstractKind { su2_paper, su11_paper };

// Hermitian triple (X1, X2, X0) with
//   [X0, X1] = i X2,  [X0, X2] = -i X1,  [X1, X2] = i kappa X0,
// kappa = +1 for su2_paper ([A-, A+] = -2 A0) and kappa = -1 for su11_paper
// ([K-, K+] = +2 K0, as printed for the double-quantum sector).
SectorBasis abstract_basis(AbstractKind kind);

// X1 = (A+ + A-)/2, X2 = (A+ - A-)/(2i), X0 = A0, labeled from the inputs.
std::vector<OperatorMatrix> hermitian_triple(const OperatorMatrix& raise,
                                             const OperatorMatrix& lower,
                                             const OperatorMatrix& diag);

// Hermitian real form of a matrix basis: real Gram-Schmidt over the Hermitian
// parts (e + e^dag)/2 and (e - e^dag)/2i in element order, then re-measured.
// Requires span(elements) to be closed under the adjoint.
SectorBasis hermitian_form(const SectorBasis& basis);

// Real constants f with [X_a, X_b] = i sum_c f(a, b, c) X_c. Throws
// NotHermitianBasis if the basis is not in Hermitian convention.
StructureConstants real_structure_constants(const SectorBasis& basis, double tol = 1e-10);

// f(0, 1, 2) of a Hermitian triple ordered (X1, X2, X0).
double triple_kappa(const SectorBasis& hermitian_triple);

// max_{i,j} ||c(i, j, .) + c(j, i, .)||
double antisymmetry_defect(const SectorBasis& basis);
// max over (i, j, k, l) of the cyclic Jacobi sum on the constants.
double jacobi_residual(const SectorBasis& basis);

// ------------------------------- Killing form ----------------------------------

enum class CompactnessLabel { compact, noncompact, degenerate };

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

struct KillingClassification {
  Eigen::MatrixXd metric;  // g_ab = sum_{c,d} f_ac^d f_bd^c
  Signature signature;
  CompactnessLabel label = CompactnessLabel::degenerate;
};

// Matrix bases are first brought to their Hermitian real form. Throws
// NotClosed if closure_residual exceeds 1e-8.
KillingClassification killing_classify(const SectorBasis& basis);

// ------------------------------ Heisenberg flows -------------------------------

enum class FlowClass { oscillatory, hyperbolic, mixed };

struct AdjointSpectrum {
  std::vector<cplx> eigenvalues;
  FlowClass classification = FlowClass::oscillatory;
  double tolerance = 0.0;
};

// Flow matrix of d<X_b>/dt = i <[H, X_b]> with H = sum_a h_a X_a on a Hermitian
// basis; M_bc = -sum_a h_a f(a, b, c). Tolerance for the real/imaginary tests
// is 1e-9 * ||h||.
Eigen::MatrixXd heisenberg_flow_matrix(const SectorBasis& basis, std::span<const double> h);
AdjointSpectrum heisenberg_flow_spectrum(const SectorBasis& basis, std::span<const double> h);

std::string to_string(CompactnessLabel label);
std::string to_string(FlowClass cls);

}  // namespace dqw::algebra
