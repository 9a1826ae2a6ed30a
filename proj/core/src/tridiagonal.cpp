#include "tridiagonal.hpp"

#include "dqw/error.hpp"

#include <lapacke.h>

#include <string>

namespace dqw::detail {

TridiagonalEigen tridiagonal_eigen(std::vector<double> diagonal, std::vector<double> offdiagonal) {
  const lapack_int n = static_cast<lapack_int>(diagonal.size());
  offdiagonal.resize(diagonal.size(), 0.0);
  TridiagonalEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(static_cast<std::size_t>(n) * n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, diagonal.data(), offdiagonal.data(), 0.0, 0.0,
                     0, 0, 0.0, &found, out.eigenvalues.data(), out.eigenvectors.data(), n,
                     support.data());
  if (info != 0 || found != n) {
    throw Error(Errc::truncation_exceeded,
                "tridiagonal eigensolver failed (info " + std::to_string(info) + ")");
  }
  return out;
}

}  // namespace dqw::detail
