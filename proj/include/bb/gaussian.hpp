#pragma once

// Covariance-matrix engine for multimode Gaussian states.
//
// Conventions: quadratures are interleaved (x1, p1, x2, p2, ...), the vacuum
// covariance matrix is the identity and x = a + a^dagger, so a thermal state
// with mean photon number N has covariance (2N+1) I and entropy g(N).
// Arithmetic is carried out in long double: near the entanglement-breaking
// point the dilations involve gains in the thousands and the symplectic
// spectrum of nearly pure marginals loses ~eps * |V|^2 in absolute accuracy.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bb/error.hpp"
#include "bb/gfunc.hpp"

namespace bb::gaussian {

using Real = long double;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using ModeList = std::vector<std::size_t>;

// Symplectic eigenvalues this far below 1 are clamped to 1; further below is an error.
inline constexpr Real kClampTolerance = 1e-9L;
// Relative mismatch allowed between the +nu and -nu members of a pair.
inline constexpr Real kPairingTolerance = 1e-8L;
inline constexpr Real kSymplecticTolerance = 1e-10L;

inline Matrix symplectic_form(std::size_t n) {
  Matrix omega = Matrix::Zero(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1;
    omega(2 * k + 1, 2 * k) = -1;
  }
  return omega;
}

namespace detail {

struct Unchecked {};

inline std::string sci(Real x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << static_cast<double>(x);
  return os.str();
}

inline std::vector<std::string> default_labels(std::size_t n, std::string_view prefix = "m") {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t k = 0; k < n; ++k) labels.push_back(std::string(prefix) + std::to_string(k));
  return labels;
}

inline std::vector<Eigen::Index> quadrature_indices(const ModeList& modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (auto m : modes) {
    idx.push_back(static_cast<Eigen::Index>(2 * m));
    idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  return idx;
}

inline void require_distinct(const ModeList& modes, std::size_t n, const char* what) {
  std::unordered_set<std::size_t> seen;
  for (auto m : modes) {
    require(m < n, std::string(what) + ": mode index out of range");
    require(seen.insert(m).second, std::string(what) + ": repeated mode");
  }
}

}  // namespace detail

inline std::vector<Real> symplectic_eigenvalues(const Matrix& cov);

class GaussianState {
 public:
  // Symmetrizes `cov` and rejects matrices that violate cov + i*Omega >= 0.
  GaussianState(Vector mean, Matrix cov, std::vector<std::string> labels)
      : mean_(std::move(mean)), cov_(std::move(cov)), labels_(std::move(labels)) {
    validate_shape();
    cov_ = (0.5L * (cov_ + cov_.transpose())).eval();
    try {
      symplectic_eigenvalues(cov_);
    } catch (const Error& e) {
      fail(ErrorCode::invalid_argument, std::string("GaussianState: unphysical covariance matrix (") + e.what() + ")");
    }
  }

  GaussianState(Vector mean, Matrix cov)
      : GaussianState(std::move(mean), cov, detail::default_labels(static_cast<std::size_t>(cov.rows() / 2))) {}

  std::size_t modes() const { return labels_.size(); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    require(it != labels_.end(), "unknown mode label '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  ModeList indices(const std::vector<std::string>& labels) const {
    ModeList out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(index_of(l));
    return out;
  }

  GaussianState relabeled(std::vector<std::string> labels) const {
    GaussianState out = *this;
    out.labels_ = std::move(labels);
    out.validate_shape();
    return out;
  }

  // Skips the physicality check; for operations that provably preserve it.
  GaussianState(detail::Unchecked, Vector mean, Matrix cov, std::vector<std::string> labels)
      : mean_(std::move(mean)), cov_(std::move(cov)), labels_(std::move(labels)) {
    cov_ = (0.5L * (cov_ + cov_.transpose())).eval();
  }

 private:
  void validate_shape() const {
    require(!labels_.empty(), "GaussianState: at least one mode required");
    const auto dim = static_cast<Eigen::Index>(2 * labels_.size());
    require(cov_.rows() == dim && cov_.cols() == dim, "GaussianState: covariance must be 2n x 2n");
    require(mean_.size() == dim, "GaussianState: mean must have length 2n");
    require(cov_.allFinite() && mean_.allFinite(), "GaussianState: non-finite entries");
    std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
    require(seen.size() == labels_.size(), "GaussianState: duplicate mode labels");
  }

  Vector mean_;
  Matrix cov_;
  std::vector<std::string> labels_;
};

// Linear phase-space map on `arity()` modes with S Omega S^T = Omega.
class SymplecticTransform {
 public:
  explicit SymplecticTransform(Matrix matrix) : matrix_(std::move(matrix)) {
    require(matrix_.rows() == matrix_.cols() && matrix_.rows() % 2 == 0 && matrix_.rows() > 0,
            "SymplecticTransform: matrix must be 2m x 2m");
    require(matrix_.allFinite(), "SymplecticTransform: non-finite entries");
    require(symplectic_defect() <= kSymplecticTolerance * std::max<Real>(1, matrix_.squaredNorm()),
            "SymplecticTransform: matrix is not symplectic");
  }

  std::size_t arity() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Matrix& matrix() const { return matrix_; }

  // max-norm of S Omega S^T - Omega
  Real symplectic_defect() const {
    const Matrix omega = symplectic_form(static_cast<std::size_t>(matrix_.rows() / 2));
    return (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
  }

 private:
  Matrix matrix_;
};

// Sorted (ascending) symplectic spectrum of a covariance matrix.
//
// The eigenvalues of Omega*V come in pairs +-i*nu. With V = L L^T (Cholesky),
// i * L^T Omega L is Hermitian and similar to i*Omega*V, so its real spectrum
// {+-nu} is computed with a Hermitian solver and the two halves are matched.
inline std::vector<Real> symplectic_eigenvalues(const Matrix& cov) {
  using Complex = std::complex<Real>;
  using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  require(cov.rows() == cov.cols() && cov.rows() % 2 == 0 && cov.rows() > 0,
          "symplectic_eigenvalues: covariance must be 2n x 2n");
  const auto n = static_cast<std::size_t>(cov.rows() / 2);

  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::numerical, "symplectic_eigenvalues: covariance matrix is not positive definite");
  const Matrix lower = llt.matrixL();
  const Matrix antisym = lower.transpose() * symplectic_form(n) * lower;
  const CMatrix herm = Complex(0, 1) * antisym.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::numerical, "symplectic_eigenvalues: eigensolver failed");
  const auto& ev = solver.eigenvalues();  // ascending: -nu_max ... -nu_min, nu_min ... nu_max

  std::vector<Real> nus(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real neg = -ev(static_cast<Eigen::Index>(n - 1 - k));
    const Real pos = ev(static_cast<Eigen::Index>(n + k));
    if (std::abs(pos - neg) > kPairingTolerance * std::max<Real>(1, pos))
      fail(ErrorCode::numerical, "symplectic_eigenvalues: eigenvalue pairing failed; corrupted covariance matrix");
    Real nu = 0.5L * (pos + neg);
    if (nu < 1 - kClampTolerance)
      fail(ErrorCode::numerical, "symplectic_eigenvalues: nu - 1 = " + detail::sci(nu - 1) +
                                     " violates the uncertainty principle");
    nus[k] = std::max<Real>(nu, 1);
  }
  std::sort(nus.begin(), nus.end());
  return nus;
}

inline std::vector<Real> symplectic_eigenvalues(const GaussianState& state) {
  return symplectic_eigenvalues(state.cov());
}

inline GaussianState vacuum_state(std::size_t n) {
  require(n >= 1, "vacuum_state: n must be >= 1");
  return GaussianState(Vector::Zero(static_cast<Eigen::Index>(2 * n)),
                       Matrix::Identity(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n)));
}

inline GaussianState vacuum_state(std::vector<std::string> labels) {
  const auto dim = static_cast<Eigen::Index>(2 * labels.size());
  require(!labels.empty(), "vacuum_state: n must be >= 1");
  return GaussianState(Vector::Zero(dim), Matrix::Identity(dim, dim), std::move(labels));
}

inline GaussianState thermal_state(Real mean_photons, std::string label = "m0") {
  require(std::isfinite(mean_photons) && mean_photons >= 0, "thermal_state: N must be >= 0");
  return GaussianState(Vector::Zero(2), (2 * mean_photons + 1) * Matrix::Identity(2, 2), {std::move(label)});
}

// b = sqrt(t) a + sqrt(1-t) e,  e' = -sqrt(1-t) a + sqrt(t) e  on modes (a, e).
inline SymplecticTransform beamsplitter(Real t) {
  require(t >= 0 && t <= 1, "beamsplitter: transmissivity must lie in [0,1]");
  const Real c = std::sqrt(t), s = std::sqrt(1 - t);
  Matrix m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, s,
      -s, 0, c, 0,
       0, -s, 0, c;
  return SymplecticTransform(std::move(m));
}

// b = sqrt(G) a + sqrt(G-1) e^dagger,  e' = sqrt(G-1) a^dagger + sqrt(G) e.
// The conjugation flips the sign of the partner's p quadrature.
inline SymplecticTransform two_mode_squeezer(Real gain) {
  require(std::isfinite(gain) && gain >= 1, "two_mode_squeezer: gain must be >= 1");
  const Real c = std::sqrt(gain), s = std::sqrt(gain - 1);
  Matrix m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return SymplecticTransform(std::move(m));
}

inline SymplecticTransform single_mode_squeezer(Real r) {
  require(std::isfinite(r), "single_mode_squeezer: r must be finite");
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(r);
  m(1, 1) = std::exp(-r);
  return SymplecticTransform(std::move(m));
}

inline SymplecticTransform phase_rotation(Real phi) {
  require(std::isfinite(phi), "phase_rotation: angle must be finite");
  Matrix m(2, 2);
  m << std::cos(phi), std::sin(phi),
      -std::sin(phi), std::cos(phi);
  return SymplecticTransform(std::move(m));
}

inline GaussianState apply(const SymplecticTransform& transform, const GaussianState& state, const ModeList& targets) {
  require(targets.size() == transform.arity(), "apply: target count does not match transform arity");
  detail::require_distinct(targets, state.modes(), "apply");

  const auto idx = detail::quadrature_indices(targets);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  const Eigen::Index full = state.cov().rows();

  // S_full = I except on the targeted block.
  Matrix s_full = Matrix::Identity(full, full);
  for (Eigen::Index i = 0; i < dim; ++i) {
    s_full.row(idx[i]).setZero();
    for (Eigen::Index j = 0; j < dim; ++j) s_full(idx[i], idx[j]) = transform.matrix()(i, j);
  }
  Vector mean = s_full * state.mean();
  Matrix cov = s_full * state.cov() * s_full.transpose();
  return GaussianState(detail::Unchecked{}, std::move(mean), std::move(cov), state.labels());
}

inline GaussianState apply(const SymplecticTransform& transform, const GaussianState& state,
                           const std::vector<std::string>& targets) {
  return apply(transform, state, state.indices(targets));
}

inline GaussianState displace(const GaussianState& state, std::size_t mode, Real dx, Real dp) {
  require(mode < state.modes(), "displace: mode index out of range");
  require(std::isfinite(dx) && std::isfinite(dp), "displace: non-finite displacement");
  Vector mean = state.mean();
  mean(static_cast<Eigen::Index>(2 * mode)) += dx;
  mean(static_cast<Eigen::Index>(2 * mode + 1)) += dp;
  return GaussianState(detail::Unchecked{}, std::move(mean), state.cov(), state.labels());
}

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  require(seen.size() == labels.size(), "tensor: mode label collision");

  const Eigen::Index na = a.cov().rows(), nb = b.cov().rows();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  return GaussianState(detail::Unchecked{}, std::move(mean), std::move(cov), std::move(labels));
}

// Partial trace: principal submatrix on the kept modes, in the order given.
inline GaussianState reduce(const GaussianState& state, const ModeList& keep) {
  require(!keep.empty(), "reduce: keep set must be non-empty");
  detail::require_distinct(keep, state.modes(), "reduce");
  const auto idx = detail::quadrature_indices(keep);
  const auto dim = static_cast<Eigen::Index>(idx.size());
  Matrix cov(dim, dim);
  Vector mean(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    mean(i) = state.mean()(idx[i]);
    for (Eigen::Index j = 0; j < dim; ++j) cov(i, j) = state.cov()(idx[i], idx[j]);
  }
  std::vector<std::string> labels;
  for (auto m : keep) labels.push_back(state.labels()[m]);
  return GaussianState(detail::Unchecked{}, std::move(mean), std::move(cov), std::move(labels));
}

inline GaussianState reduce(const GaussianState& state, const std::vector<std::string>& keep) {
  return reduce(state, state.indices(keep));
}

inline ModeList all_modes(const GaussianState& state) {
  ModeList m(state.modes());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = k;
  return m;
}

// von Neumann entropy in bits: sum_k g((nu_k - 1)/2).
inline Real entropy(const GaussianState& state) {
  Real s = 0;
  for (Real nu : symplectic_eigenvalues(state.cov())) s += g<Real>((nu - 1) / 2);
  return s;
}

inline Real entropy(const GaussianState& state, const ModeList& modes) { return entropy(reduce(state, modes)); }

// H(A|B) = H(AB) - H(B); may be negative.
inline Real conditional_entropy(const GaussianState& state, const ModeList& a, const ModeList& b) {
  require(!a.empty() && !b.empty(), "conditional_entropy: mode sets must be non-empty");
  for (auto m : a)
    require(std::find(b.begin(), b.end(), m) == b.end(), "conditional_entropy: mode sets overlap");
  ModeList ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return entropy(state, ab) - entropy(state, b);
}

inline Real conditional_entropy(const GaussianState& state, const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  return conditional_entropy(state, state.indices(a), state.indices(b));
}

// <a^dagger a> = (V_xx + V_pp - 2)/4 + (<x>^2 + <p>^2)/4
inline Real mean_photon_number(const GaussianState& state, std::size_t mode) {
  require(mode < state.modes(), "mean_photon_number: mode index out of range");
  const auto i = static_cast<Eigen::Index>(2 * mode);
  const Real xm = state.mean()(i), pm = state.mean()(i + 1);
  return (state.cov()(i, i) + state.cov()(i + 1, i + 1) - 2) / 4 + (xm * xm + pm * pm) / 4;
}

}  // namespace bb::gaussian
