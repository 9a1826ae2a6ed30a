#include "dqw/algebra.hpp"

#include "dqw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dqw::algebra {

namespace {

// Single spin-1/2 operators in the (up, down) basis.
Matrix spin_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = -0.5;
  return m;
}

Matrix spin_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

cplx hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

constexpr double kClosedForKilling = 1e-8;

void require_closed(const SectorBasis& basis, const char* where) {
  if (basis.closure_residual > kClosedForKilling) {
    throw Error(Errc::not_closed, std::string(where) + ": closure residual " +
                                      std::to_string(basis.closure_residual));
  }
}

}  // namespace

TwoSpinOperators build_two_spin_operators() {
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix sz = spin_z();
  const Matrix sp = spin_plus();
  const Matrix sm = sp.adjoint();
  const Matrix sx = 0.5 * (sp + sm);

  const Matrix i1z = kron(sz, id);
  const Matrix i2z = kron(id, sz);
  const Matrix i1p = kron(sp, id);
  const Matrix i1m = kron(sm, id);
  const Matrix i2p = kron(id, sp);
  const Matrix i2m = kron(id, sm);

  return TwoSpinOperators{
      OperatorMatrix(i1z, "I1z"),
      OperatorMatrix(i2z, "I2z"),
      OperatorMatrix(kron(sx, id), "I1x"),
      OperatorMatrix(kron(id, sx), "I2x"),
      OperatorMatrix(i1p, "I1+"),
      OperatorMatrix(i1m, "I1-"),
      OperatorMatrix(i2p, "I2+"),
      OperatorMatrix(i2m, "I2-"),
      OperatorMatrix(i1p * i2p, "K+"),
      OperatorMatrix(i1m * i2m, "K-"),
      OperatorMatrix(0.5 * (i1z + i2z), "K0"),
      OperatorMatrix(i1p * i2m, "S+"),
      OperatorMatrix(i1m * i2p, "S-"),
      OperatorMatrix(0.5 * (i1z - i2z), "S0"),
      OperatorMatrix(i1z + i2z, "Iz"),
      OperatorMatrix(i1z * i2z, "I1zI2z"),
  };
}

int coherence_order(const OperatorMatrix& op, const OperatorMatrix& iz_total, double tol) {
  if (op.dim() != iz_total.dim()) {
    throw Error(Errc::dimension_mismatch, "coherence_order: operator and Iz differ in size");
  }
  const Matrix& o = op.matrix();
  const double norm2 = o.squaredNorm();
  if (norm2 == 0.0) {
    throw Error(Errc::not_eigenoperator, "coherence_order: zero operator '" + op.label() + "'");
  }
  const Matrix c = commutator(iz_total.matrix(), o);
  const cplx p = hs_inner(o, c) / norm2;
  const double residual = (c - p * o).norm();
  const double rounded = std::round(p.real());
  if (residual > tol * std::max(1.0, std::sqrt(norm2)) || std::abs(p.imag()) > tol ||
      std::abs(p.real() - rounded) > 1e-8) {
    throw Error(Errc::not_eigenoperator, "coherence_order: '" + op.label() +
                                             "' has commutator residual " +
                                             std::to_string(residual));
  }
  return static_cast<int>(rounded);
}

int coherence_order(const OperatorMatrix& op, double tol) {
  if (op.dim() != 4) {
    throw Error(Errc::dimension_mismatch, "coherence_order: two-spin operators are 4x4");
  }
  static const OperatorMatrix iz = build_two_spin_operators().Iz_total;
  return coherence_order(op, iz, tol);
}

std::size_t SectorBasis::index_of(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(Errc::dimension_mismatch, "basis has no element '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

SectorBasis measure_structure_constants(std::span<const OperatorMatrix> elements) {
  const std::size_t n = elements.size();
  if (n == 0) {
    throw Error(Errc::linearly_dependent_basis, "empty basis");
  }
  const Eigen::Index dim = elements.front().dim();
  for (const auto& e : elements) {
    if (e.dim() != dim) {
      throw Error(Errc::dimension_mismatch, "basis elements differ in size");
    }
  }

  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gram(i, j) = hs_inner(elements[i].matrix(), elements[j].matrix());
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> gram_eig(gram);
  const double lo = gram_eig.eigenvalues().minCoeff();
  const double hi = gram_eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e10) {
    throw Error(Errc::linearly_dependent_basis,
                "Gram matrix condition number exceeds 1e10");
  }
  const Eigen::LDLT<Matrix> solver(gram);

  SectorBasis basis;
  basis.elements.assign(elements.begin(), elements.end());
  basis.constants = StructureConstants(n);
  for (const auto& e : elements) {
    basis.labels.push_back(e.label());
    std::optional<int> order;
    if (e.dim() == 4) {
      try {
        order = coherence_order(e);
      } catch (const Error&) {
        order.reset();
      }
    }
    basis.coherence_orders.push_back(order);
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix c = commutator(elements[i].matrix(), elements[j].matrix());
      Vector rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs(k) = hs_inner(elements[k].matrix(), c);
      const Vector x = solver.solve(rhs);
      Matrix remainder = c;
      for (std::size_t k = 0; k < n; ++k) {
        basis.constants(i, j, k) = x(k);
        remainder -= x(k) * elements[k].matrix();
      }
      worst = std::max(worst, remainder.norm());
    }
  }
  basis.closure_residual = worst;
  return basis;
}

SectorBasis abstract_basis(AbstractKind kind) {
  const double kappa = kind == AbstractKind::su2_paper ? 1.0 : -1.0;
  SectorBasis basis;
  basis.labels = {"X1", "X2", "X0"};
  basis.coherence_orders = {std::nullopt, std::nullopt, 0};
  basis.constants = StructureConstants(3);
  auto set = [&](std::size_t a, std::size_t b, std::size_t c, double f) {
    basis.constants(a, b, c) = kI * f;
    basis.constants(b, a, c) = -kI * f;
  };
  constexpr std::size_t x1 = 0, x2 = 1, x0 = 2;
  set(x0, x1, x2, 1.0);
  set(x0, x2, x1, -1.0);
  set(x1, x2, x0, kappa);
  basis.closure_residual = 0.0;
  return basis;
}

std::vector<OperatorMatrix> hermitian_triple(const OperatorMatrix& raise,
                                             const OperatorMatrix& lower,
                                             const OperatorMatrix& diag) {
  const Matrix& p = raise.matrix();
  const Matrix& m = lower.matrix();
  return {
      OperatorMatrix(0.5 * (p + m), "X1(" + raise.label() + ")"),
      OperatorMatrix((p - m) / (2.0 * kI), "X2(" + raise.label() + ")"),
      OperatorMatrix(diag.matrix(), "X0(" + diag.label() + ")"),
  };
}

SectorBasis hermitian_form(const SectorBasis& basis) {
  if (!basis.has_matrices()) {
    throw Error(Errc::not_hermitian_basis, "hermitian_form needs a matrix basis");
  }
  std::vector<OperatorMatrix> kept;
  std::vector<Matrix> ortho;
  auto real_inner = [](const Matrix& a, const Matrix& b) { return hs_inner(a, b).real(); };

  for (const auto& e : basis.elements) {
    const Matrix& m = e.matrix();
    const std::pair<Matrix, std::string> parts[] = {
        {0.5 * (m + m.adjoint()), "Herm(" + e.label() + ")"},
        {(m - m.adjoint()) / (2.0 * kI), "Skew(" + e.label() + ")"},
    };
    for (const auto& [candidate, label] : parts) {
      const double scale = candidate.norm();
      if (scale < 1e-14) continue;
      Matrix r = candidate;
      for (const auto& q : ortho) r -= (real_inner(q, r) / real_inner(q, q)) * q;
      if (r.norm() <= 1e-10 * scale) continue;
      // Hermitian parts remain Hermitian under real combinations.
      r = 0.5 * (r + r.adjoint());
      ortho.push_back(r);
      kept.emplace_back(r, label);
    }
  }
  if (kept.size() != basis.size()) {
    throw Error(Errc::not_hermitian_basis,
                "span is not closed under the adjoint (real dimension " +
                    std::to_string(kept.size()) + " vs " + std::to_string(basis.size()) + ")");
  }
  return measure_structure_constants(kept);
}

StructureConstants real_structure_constants(const SectorBasis& basis, double tol) {
  if (basis.has_matrices()) {
    for (const auto& e : basis.elements) {
      if (!e.is_hermitian(tol)) {
        throw Error(Errc::not_hermitian_basis, "element '" + e.label() + "' is not Hermitian");
      }
    }
  }
  const std::size_t n = basis.size();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(basis.constants(i, j, k)));

  StructureConstants f(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const cplx c = basis.constants(i, j, k);
        if (std::abs(c.real()) > tol * scale) {
          throw Error(Errc::not_hermitian_basis,
                      "constants are not of the form i*f with f real");
        }
        f(i, j, k) = c.imag();
      }
    }
  }
  return f;
}

double triple_kappa(const SectorBasis& hermitian_triple) {
  if (hermitian_triple.size() != 3) {
    throw Error(Errc::dimension_mismatch, "triple_kappa expects three generators");
  }
  return real_structure_constants(hermitian_triple)(0, 1, 2).real();
}

double antisymmetry_defect(const SectorBasis& basis) {
  const std::size_t n = basis.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += std::norm(basis.constants(i, j, k) + basis.constants(j, i, k));
      }
      worst = std::max(worst, std::sqrt(s));
    }
  }
  return worst;
}

double jacobi_residual(const SectorBasis& basis) {
  const std::size_t n = basis.size();
  const auto& c = basis.constants;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          cplx sum{0.0, 0.0};
          for (std::size_t m = 0; m < n; ++m) {
            sum += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          }
          worst = std::max(worst, std::abs(sum));
        }
  return worst;
}

KillingClassification killing_classify(const SectorBasis& basis) {
  require_closed(basis, "killing_classify");
  bool hermitian = true;
  for (const auto& e : basis.elements) hermitian = hermitian && e.is_hermitian(1e-10);
  const SectorBasis real_form = hermitian ? basis : hermitian_form(basis);
  require_closed(real_form, "killing_classify");

  const StructureConstants f = real_structure_constants(real_form);
  const std::size_t n = real_form.size();
  KillingClassification out;
  out.metric = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double g = 0.0;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) g += f(a, c, d).real() * f(b, d, c).real();
      out.metric(a, b) = g;
    }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.metric);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double zero_tol = 1e-9 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) <= zero_tol) {
      ++out.signature.zero;
    } else if (lambda(i) > 0.0) {
      ++out.signature.positive;
    } else {
      ++out.signature.negative;
    }
  }
  // Definiteness regardless of overall sign decides compactness.
  if (out.signature.zero > 0) {
    out.label = CompactnessLabel::degenerate;
  } else if (out.signature.positive > 0 && out.signature.negative > 0) {
    out.label = CompactnessLabel::noncompact;
  } else {
    out.label = CompactnessLabel::compact;
  }
  return out;
}

Eigen::MatrixXd heisenberg_flow_matrix(const SectorBasis& basis, std::span<const double> h) {
  require_closed(basis, "heisenberg_flow_spectrum");
  const std::size_t n = basis.size();
  if (h.size() != n) {
    throw Error(Errc::dimension_mismatch, "coefficient vector length differs from basis size");
  }
  const StructureConstants f = real_structure_constants(basis);
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t a = 0; a < n; ++a) s += h[a] * f(a, b, c).real();
      flow(b, c) = -s;
    }
  return flow;
}

AdjointSpectrum heisenberg_flow_spectrum(const SectorBasis& basis, std::span<const double> h) {
  const Eigen::MatrixXd flow = heisenberg_flow_matrix(basis, h);
  double hnorm = 0.0;
  for (double x : h) hnorm += x * x;
  hnorm = std::sqrt(hnorm);

  AdjointSpectrum out;
  out.tolerance = 1e-9 * std::max(hnorm, std::numeric_limits<double>::min());
  const Eigen::EigenSolver<Eigen::MatrixXd> eig(flow, false);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    out.eigenvalues.push_back(eig.eigenvalues()(i));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  const double tol = out.tolerance;
  const bool all_imaginary = std::all_of(out.eigenvalues.begin(), out.eigenvalues.end(),
                                         [tol](cplx z) { return std::abs(z.real()) < tol; });
  const bool some_real = std::any_of(out.eigenvalues.begin(), out.eigenvalues.end(), [tol](cplx z) {
    return std::abs(z.real()) >= tol && std::abs(z.imag()) < tol;
  });
  out.classification = all_imaginary ? FlowClass::oscillatory
                       : some_real   ? FlowClass::hyperbolic
                                     : FlowClass::mixed;
  return out;
}

std::string to_string(CompactnessLabel label) {
  switch (label) {
    case CompactnessLabel::compact: return "compact";
    case CompactnessLabel::noncompact: return "noncompact";
    case CompactnessLabel::degenerate: return "degenerate";
  }
  return "unknown";
}

std::string to_string(FlowClass cls) {
  switch (cls) {
    case FlowClass::oscillatory: return "oscillatory";
    case FlowClass::hyperbolic: return "hyperbolic";
    case FlowClass::mixed: return "mixed";
  }
  return "unknown";
}

}  // namespace dqw::algebra
