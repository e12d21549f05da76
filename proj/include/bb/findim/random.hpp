#pragma once

// Unitarily invariant random ensembles, reproducible from a std::mt19937_64.

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "bb/error.hpp"
#include "bb/findim/state.hpp"

namespace bb::findim {

using Rng = std::mt19937_64;

// Entries i.i.d. standard complex normal.
inline CMatrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

// Orthonormal columns from QR, with the phase of R's diagonal divided out so the
// distribution is Haar.
inline CMatrix orthonormalize(const CMatrix& m) {
  require(m.rows() >= m.cols(), "orthonormalize: need rows >= cols");
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

inline CMatrix random_isometry(Rng& rng, std::size_t dim_in, std::size_t dim_out) {
  require(dim_out >= dim_in, "random_isometry: output dimension must be >= input dimension");
  return orthonormalize(gaussian_matrix(rng, static_cast<Eigen::Index>(dim_out), static_cast<Eigen::Index>(dim_in)));
}

inline CMatrix random_unitary(Rng& rng, std::size_t dim) { return random_isometry(rng, dim, dim); }

inline PureStateVector random_pure_state(Rng& rng, Layout systems) {
  CVector v = gaussian_matrix(rng, static_cast<Eigen::Index>(total_dim(systems)), 1).col(0);
  v /= v.norm();
  return PureStateVector(std::move(v), std::move(systems));
}

// Haar pure state on systems x ancilla of the same size, ancilla traced out.
inline DensityOperator random_mixed_state(Rng& rng, Layout systems) {
  const auto d = static_cast<Eigen::Index>(total_dim(systems));
  const CMatrix g = gaussian_matrix(rng, d, d);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho), std::move(systems));
}

// Kraus operators dim_in -> dim_out obtained by slicing a random isometry
// dim_in -> dim_out * count.
inline std::vector<CMatrix> random_kraus(Rng& rng, std::size_t dim_in, std::size_t dim_out, std::size_t count) {
  require(count >= 1, "random_kraus: need at least one operator");
  require(dim_out * count >= dim_in, "random_kraus: dim_out * count must be >= dim_in");
  const CMatrix v = random_isometry(rng, dim_in, dim_out * count);
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(v.middleRows(static_cast<Eigen::Index>(k * dim_out), static_cast<Eigen::Index>(dim_out)));
  return out;
}

inline Layout qubits(const std::vector<std::string>& labels) {
  Layout out;
  for (const auto& l : labels) out.push_back({l, 2});
  return out;
}

}  // namespace bb::findim
