#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace dqw {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// Dense square complex matrix with a short label ("K+", "I1z", ...).
// Hermiticity tests are relative: ||A - A^dag||_F <= tol * max(1, ||A||_F),
// so operators expressed in rad/s behave like dimensionless ones.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(Matrix entries, std::string label = {});

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }
  const std::string& label() const noexcept { return label_; }

  bool is_hermitian(double tol = 1e-12) const;
  bool is_anti_hermitian(double tol = 1e-12) const;

  OperatorMatrix adjoint() const;
  OperatorMatrix relabeled(std::string label) const;

 private:
  Matrix entries_;
  std::string label_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

// a (x) b, with a acting on the first (slower) index.
Matrix kron(const Matrix& a, const Matrix& b);

// ||A - A^dag||_F / max(1, ||A||_F)
double hermiticity_defect(const Matrix& a);

}  // namespace dqw
