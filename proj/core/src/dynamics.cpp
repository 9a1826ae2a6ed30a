#include "dqw/dynamics.hpp"

#include "dqw/error.hpp"
#include "format.hpp"
#include "tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace dqw::dynamics {

namespace {

void require_increasing(std::span<const double> times, const char* where) {
  if (times.empty()) {
    throw Error(Errc::invalid_grid, std::string(where) + ": empty time grid");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw Error(Errc::invalid_grid,
                  std::string(where) + ": times must be finite and strictly increasing");
    }
  }
}

struct Su11Run {
  int truncation = 0;
  std::vector<double> signal;
  std::vector<double> tail;
  double norm_drift = 0.0;
};

// Vacuum evolution on levels 0..N. With early_exit, the grid's last time is
// evaluated first and the run stops if its tail already violates the bound.
std::optional<Su11Run> run_truncated(double k, int truncation, double g,
                                     std::span<const double> times, double tail_bound) {
  const std::size_t dim = static_cast<std::size_t>(truncation) + 1;
  std::vector<double> offdiag(dim - 1);
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    offdiag[n] = g * std::sqrt((n + 1.0) * (n + 2.0 * k));
  }
  const auto eig = detail::tridiagonal_eigen(std::vector<double>(dim, 0.0), offdiag);
  const Eigen::Map<const Eigen::MatrixXd> v(eig.eigenvectors.data(), dim, dim);
  const Eigen::Map<const Eigen::VectorXd> lambda(eig.eigenvalues.data(), dim);
  const Eigen::VectorXd overlap = v.row(0).transpose();
  Eigen::VectorXd level(dim);
  for (std::size_t n = 0; n < dim; ++n) level(n) = n + k;

  auto evaluate = [&](double t, double& signal, double& tail, double& norm) {
    const Eigen::VectorXd phase = -lambda * t;
    const Eigen::VectorXd re = v * overlap.cwiseProduct(phase.array().cos().matrix());
    const Eigen::VectorXd im = v * overlap.cwiseProduct(phase.array().sin().matrix());
    const Eigen::VectorXd pop = re.cwiseAbs2() + im.cwiseAbs2();
    norm = std::sqrt(pop.sum());
    signal = pop.dot(level) - k;
    tail = pop(dim - 1);
  };

  Su11Run run;
  run.truncation = truncation;
  run.signal.resize(times.size());
  run.tail.resize(times.size());
  double s = 0.0, tail = 0.0, norm = 0.0;
  evaluate(times.back(), s, tail, norm);
  if (!(tail < tail_bound)) return std::nullopt;
  for (std::size_t i = 0; i < times.size(); ++i) {
    evaluate(times[i], run.signal[i], run.tail[i], norm);
    if (!(run.tail[i] < tail_bound)) return std::nullopt;
    run.norm_drift = std::max(run.norm_drift, std::abs(norm - 1.0));
  }
  return run;
}

}  // namespace

// -------------------------------- StateVector ----------------------------------

StateVector::StateVector(Vector amplitudes, double norm_tolerance)
    : amplitudes_(std::move(amplitudes)), norm_tolerance_(norm_tolerance) {
  if (amplitudes_.size() == 0 || std::abs(amplitudes_.norm() - 1.0) > norm_tolerance_) {
    throw Error(Errc::invalid_state, "state vector must be non-empty with unit norm");
  }
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw Error(Errc::dimension_mismatch, "basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

// --------------------------------- Trajectory -----------------------------------

std::size_t Trajectory::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw Error(Errc::dimension_mismatch, "trajectory has no observable '" + name + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<double> Trajectory::real_series(const std::string& name) const {
  return real_series(index_of(name));
}

std::vector<double> Trajectory::real_series(std::size_t index) const {
  std::vector<double> out;
  out.reserve(values.at(index).size());
  for (const cplx& z : values.at(index)) out.push_back(z.real());
  return out;
}

Trajectory propagate(const OperatorMatrix& hamiltonian, const StateVector& psi0,
                     std::span<const double> times,
                     std::span<const OperatorMatrix> observables) {
  if (hermiticity_defect(hamiltonian.matrix()) > 1e-10) {
    throw Error(Errc::non_hermitian_generator, "propagate: '" + hamiltonian.label() + "'");
  }
  const Eigen::Index dim = hamiltonian.dim();
  if (psi0.dim() != dim) {
    throw Error(Errc::dimension_mismatch, "propagate: state and Hamiltonian sizes differ");
  }
  for (const auto& o : observables) {
    if (o.dim() != dim) {
      throw Error(Errc::dimension_mismatch, "propagate: observable '" + o.label() + "'");
    }
  }
  require_increasing(times, "propagate");

  const Matrix h = 0.5 * (hamiltonian.matrix() + hamiltonian.matrix().adjoint());
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Matrix& u = eig.eigenvectors();
  const Eigen::VectorXd& energies = eig.eigenvalues();
  const Vector coeff = u.adjoint() * psi0.amplitudes();

  Trajectory traj;
  traj.representation = Representation::two_spin;
  traj.times.assign(times.begin(), times.end());
  for (const auto& o : observables) traj.names.push_back(o.label());
  traj.values.assign(observables.size(), std::vector<cplx>(times.size()));

  for (std::size_t i = 0; i < times.size(); ++i) {
    Vector rotated(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      rotated(j) = std::polar(1.0, -energies(j) * times[i]) * coeff(j);
    }
    const Vector psi = u * rotated;
    traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(psi.norm() - 1.0));
    for (std::size_t o = 0; o < observables.size(); ++o) {
      traj.values[o][i] = psi.dot(observables[o].matrix() * psi);
    }
  }
  return traj;
}

// ---------------------------------- Su11Rep -------------------------------------

Su11Rep::Su11Rep(double k, int truncation) : k_(k), n_(truncation) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(Errc::invalid_bargmann_index, "Bargmann index must be positive");
  }
  if (truncation < 2) {
    throw Error(Errc::truncation_too_small, "truncation N must be at least 2");
  }
  ladder_.resize(static_cast<std::size_t>(n_));
  for (int n = 0; n < n_; ++n) ladder_[n] = std::sqrt((n + 1.0) * (n + 2.0 * k_));
}

OperatorMatrix Su11Rep::kplus() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int n = 0; n < n_; ++n) m(n + 1, n) = ladder_[n];
  return OperatorMatrix(std::move(m), "K+");
}

OperatorMatrix Su11Rep::kminus() const { return kplus().adjoint().relabeled("K-"); }

OperatorMatrix Su11Rep::k0() const {
  Matrix m = Matrix::Zero(dim(), dim());
  for (int n = 0; n <= n_; ++n) m(n, n) = n + k_;
  return OperatorMatrix(std::move(m), "K0");
}

double Su11Rep::commutator_defect() const {
  const Matrix defect = commutator(kminus().matrix(), kplus().matrix()) - 2.0 * k0().matrix();
  return defect.topLeftCorner(n_, n_).cwiseAbs().maxCoeff();
}

Su11Rep build_su11_rep(double k, int truncation) { return Su11Rep(k, truncation); }

Trajectory hyperbolic_signal(const Su11Rep& rep, double g, std::span<const double> times,
                             const HyperbolicOptions& options) {
  require_increasing(times, "hyperbolic_signal");
  if (!std::isfinite(g)) {
    throw Error(Errc::invalid_parameter, "hyperbolic_signal: rate must be finite");
  }

  std::optional<Su11Run> accepted;
  int n = rep.truncation();
  for (; n <= options.max_dim; n *= 2) {
    accepted = run_truncated(rep.k(), n, g, times, options.tail_bound);
    if (accepted) break;
  }
  if (!accepted) {
    throw Error(Errc::truncation_exceeded, "no truncation up to N = " +
                                               std::to_string(options.max_dim) +
                                               " keeps the top-level population below " +
                                               detail::format_double(options.tail_bound));
  }

  Su11Run reported = *accepted;
  std::optional<double> delta;
  if (2 * n <= options.max_dim) {
    reported = *run_truncated(rep.k(), 2 * n, g, times, std::numeric_limits<double>::infinity());
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      worst = std::max(worst, std::abs(reported.signal[i] - accepted->signal[i]));
    }
    delta = worst;
  }

  Trajectory traj;
  traj.representation = Representation::su11_truncated;
  traj.times.assign(times.begin(), times.end());
  traj.names = {"pair_signal", "truncation_tail"};
  traj.values.assign(2, std::vector<cplx>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    traj.values[0][i] = reported.signal[i];
    traj.values[1][i] = reported.tail[i];
  }
  traj.truncation_tail = *std::max_element(reported.tail.begin(), reported.tail.end());
  traj.truncation_dim = reported.truncation;
  traj.consistency_delta = delta;
  traj.max_norm_drift = reported.norm_drift;
  return traj;
}

// ------------------------------ growth classifier -------------------------------

GrowthReport classify_growth(const Trajectory& trajectory, std::size_t observable,
                             const GrowthOptions& options) {
  const std::vector<double> s = trajectory.real_series(observable);
  const std::size_t n = s.size();
  if (n < 16 || options.windows < 2 || n < static_cast<std::size_t>(2 * options.windows)) {
    throw Error(Errc::insufficient_samples, "classify_growth needs at least 16 samples");
  }
  GrowthReport report;

  const std::size_t width = n / static_cast<std::size_t>(options.windows);
  for (int w = 0; w < options.windows; ++w) {
    const std::size_t lo = w * width;
    const std::size_t hi = (w + 1 == options.windows) ? n : lo + width;
    double env = 0.0;
    for (std::size_t i = lo; i < hi; ++i) env = std::max(env, std::abs(s[i]));
    report.window_envelopes.push_back(env);
  }
  const double peak =
      *std::max_element(report.window_envelopes.begin(), report.window_envelopes.end());
  const double floor = 1e-12 * std::max(1.0, peak);
  bool bounded = true;
  for (std::size_t w = 1; w < report.window_envelopes.size(); ++w) {
    bounded = bounded && report.window_envelopes[w] <=
                             (1.0 + options.envelope_slack) * report.window_envelopes[w - 1] + floor;
  }

  // log-linear fit on the final half
  std::vector<double> xs, ys;
  for (std::size_t i = n / 2; i < n; ++i) {
    if (std::abs(s[i]) > 0.0) {
      xs.push_back(trajectory.times[i]);
      ys.push_back(std::log(std::abs(s[i])));
    }
  }
  if (xs.size() >= 4) {
    const double m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (my + slope * (xs[i] - mx));
      rss += r * r;
    }
    report.fitted_rate = slope;
    report.fit_relative_residual =
        syy > 0.0 ? std::sqrt(rss / syy) : std::numeric_limits<double>::infinity();
  }

  if (bounded) {
    report.classification = GrowthClass::bounded_oscillatory;
  } else if (report.fitted_rate && *report.fitted_rate > 0.0 &&
             *report.fit_relative_residual < options.max_fit_residual) {
    report.classification = GrowthClass::hyperbolic;
  } else {
    report.classification = GrowthClass::unclassified;
  }
  return report;
}

std::string to_string(GrowthClass cls) {
  switch (cls) {
    case GrowthClass::bounded_oscillatory: return "bounded_oscillatory";
    case GrowthClass::hyperbolic: return "hyperbolic";
    case GrowthClass::unclassified: return "unclassified";
  }
  return "unknown";
}

void write_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "time_s";
  for (const auto& name : trajectory.names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << detail::format_double(trajectory.times[i]);
    for (const auto& series : trajectory.values) {
      out << ',' << detail::format_double(series[i].real());
    }
    out << '\n';
  }
}

}  // namespace dqw::dynamics
