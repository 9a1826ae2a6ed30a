#include "dqw/operator.hpp"

#include "dqw/error.hpp"

#include <algorithm>
#include <utility>

namespace dqw {

OperatorMatrix::OperatorMatrix(Matrix entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(Errc::dimension_mismatch,
                "operator '" + label_ + "' must be a non-empty square matrix");
  }
}

bool OperatorMatrix::is_hermitian(double tol) const {
  return hermiticity_defect(entries_) <= tol;
}

bool OperatorMatrix::is_anti_hermitian(double tol) const {
  const double scale = std::max(1.0, entries_.norm());
  return (entries_ + entries_.adjoint()).norm() <= tol * scale;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(entries_.adjoint(), label_ + "^dag");
}

OperatorMatrix OperatorMatrix::relabeled(std::string label) const {
  return OperatorMatrix(entries_, std::move(label));
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, "commutator of differently sized matrices");
  }
  return a * b - b * a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

}  // namespace dqw
