#pragma once

#include "dqw/operator.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace dqw::testing {

// Fixed seeds everywhere: failures must reproduce.
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed'0d90ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Matrix random_matrix(std::mt19937_64& g, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(normal(g), normal(g));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& g, Eigen::Index n) {
  const Matrix m = random_matrix(g, n);
  return 0.5 * (m + m.adjoint());
}

// Full-rank random density matrix: A A^dag / tr.
inline Matrix random_density(std::mt19937_64& g, Eigen::Index n) {
  const Matrix a = random_matrix(g, n);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Vector random_state(std::mt19937_64& g, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(normal(g), normal(g));
  return v / v.norm();
}

}  // namespace dqw::testing

#include "dqw/error.hpp"

#include <gtest/gtest.h>

// Asserts that stmt throws dqw::Error with the given code.
#define EXPECT_DQW_ERROR(stmt, errc)                                      \
  do {                                                                    \
    try {                                                                 \
      stmt;                                                               \
      ADD_FAILURE() << "expected " << ::dqw::to_string(errc) << " from " #stmt; \
    } catch (const ::dqw::Error& e) {                                     \
      EXPECT_EQ(e.code(), errc) << e.what();                              \
    }                                                                     \
  } while (false)
