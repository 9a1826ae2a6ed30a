#pragma once

#include <vector>

namespace dqw::detail {

// Eigenpairs of a real symmetric tridiagonal matrix (LAPACK dstevr, MRRR).
// eigenvectors are column-major, n x n.
struct TridiagonalEigen {
  std::vector<double> eigenvalues;
  std::vector<double> eigenvectors;
};

TridiagonalEigen tridiagonal_eigen(std::vector<double> diagonal, std::vector<double> offdiagonal);

}  // namespace dqw::detail
