#pragma once

// Exact finite-dimensional states over labeled tensor-product layouts.
//
// Basis ordering follows the Kronecker convention: the first subsystem in a
// layout is the most significant digit of the flat index.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bb/error.hpp"

namespace bb::findim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Labels = std::vector<std::string>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;
inline constexpr double kIsometryTolerance = 1e-10;

struct Subsystem {
  std::string label;
  std::size_t dim = 1;
};

using Layout = std::vector<Subsystem>;

inline std::size_t total_dim(const Layout& layout) {
  std::size_t d = 1;
  for (const auto& s : layout) d *= s.dim;
  return d;
}

inline std::size_t system_index(const Layout& layout, const std::string& label) {
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout[i].label == label) return i;
  fail(ErrorCode::invalid_argument, "unknown subsystem '" + label + "'");
}

inline void validate_layout(const Layout& layout) {
  std::unordered_set<std::string> seen;
  for (const auto& s : layout) {
    require(!s.label.empty(), "layout: subsystem labels must be non-empty");
    require(s.dim >= 1, "layout: subsystem dimensions must be >= 1");
    require(seen.insert(s.label).second, "layout: duplicate subsystem '" + s.label + "'");
  }
}

namespace detail {

// Flat index <-> per-subsystem digits, and sub-indices over ordered subsets.
class IndexMap {
 public:
  explicit IndexMap(const Layout& layout) : layout_(layout), dim_(total_dim(layout)) {
    const std::size_t n = layout.size();
    digits_.assign(dim_ * n, 0);
    for (std::size_t flat = 0; flat < dim_; ++flat) {
      std::size_t rem = flat;
      for (std::size_t s = n; s-- > 0;) {
        digits_[flat * n + s] = rem % layout[s].dim;
        rem /= layout[s].dim;
      }
    }
  }

  std::size_t dim() const { return dim_; }

  // Mixed-radix index of `flat` restricted to `systems`, first entry most significant.
  std::size_t sub_index(std::size_t flat, const std::vector<std::size_t>& systems) const {
    std::size_t idx = 0;
    for (auto s : systems) idx = idx * layout_[s].dim + digits_[flat * layout_.size() + s];
    return idx;
  }

 private:
  const Layout& layout_;
  std::size_t dim_;
  std::vector<std::size_t> digits_;
};

inline std::vector<std::size_t> resolve(const Layout& layout, const Labels& labels) {
  std::vector<std::size_t> out;
  std::unordered_set<std::size_t> seen;
  for (const auto& l : labels) {
    const auto i = system_index(layout, l);
    require(seen.insert(i).second, "subsystem '" + l + "' listed twice");
    out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> complement(const Layout& layout, const std::vector<std::size_t>& systems) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (std::find(systems.begin(), systems.end(), i) == systems.end()) out.push_back(i);
  return out;
}

inline Layout select(const Layout& layout, const std::vector<std::size_t>& systems) {
  Layout out;
  for (auto s : systems) out.push_back(layout[s]);
  return out;
}

}  // namespace detail

class DensityOperator {
 public:
  // Hermitizes `matrix`; rejects dimension mismatch, non-Hermitian input and wrong trace.
  DensityOperator(CMatrix matrix, Layout systems) : matrix_(std::move(matrix)), systems_(std::move(systems)) {
    validate_layout(systems_);
    const auto d = static_cast<Eigen::Index>(total_dim(systems_));
    require(matrix_.rows() == d && matrix_.cols() == d, "DensityOperator: matrix size must equal product of dims");
    require(matrix_.allFinite(), "DensityOperator: non-finite entries");
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    require(herm <= kHermitianTolerance * std::max(1.0, matrix_.cwiseAbs().maxCoeff()),
            "DensityOperator: matrix is not Hermitian");
    matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
    require(std::abs(matrix_.trace() - Complex(1, 0)) <= kTraceTolerance * std::max<double>(1, static_cast<double>(d)),
            "DensityOperator: trace must equal 1");
  }

  // Additionally rejects eigenvalues below -1e-10.
  static DensityOperator checked(CMatrix matrix, Layout systems) {
    DensityOperator rho(std::move(matrix), std::move(systems));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix_, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -kPositivityTolerance, "DensityOperator: matrix is not positive semidefinite");
    return rho;
  }

  const CMatrix& matrix() const { return matrix_; }
  const Layout& systems() const { return systems_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  CMatrix matrix_;
  Layout systems_;
};

class PureStateVector {
 public:
  PureStateVector(CVector amplitudes, Layout systems) : amplitudes_(std::move(amplitudes)), systems_(std::move(systems)) {
    validate_layout(systems_);
    require(static_cast<std::size_t>(amplitudes_.size()) == total_dim(systems_),
            "PureStateVector: length must equal product of dims");
    require(amplitudes_.allFinite(), "PureStateVector: non-finite entries");
    require(std::abs(amplitudes_.norm() - 1) <= 1e-12, "PureStateVector: vector must have unit norm");
  }

  const CVector& amplitudes() const { return amplitudes_; }
  const Layout& systems() const { return systems_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  CVector amplitudes_;
  Layout systems_;
};

inline DensityOperator to_density(const PureStateVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint(), psi.systems());
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Layout systems = a.systems();
  systems.insert(systems.end(), b.systems().begin(), b.systems().end());
  return DensityOperator(kron(a.matrix(), b.matrix()), std::move(systems));
}

namespace detail {

// Reduced matrix on `keep` (in the given order) of the operator `m` over `layout`.
inline CMatrix reduce_matrix(const CMatrix& m, const Layout& layout, const std::vector<std::size_t>& keep) {
  const IndexMap map(layout);
  const auto traced = complement(layout, keep);
  const std::size_t dk = total_dim(select(layout, keep));
  const std::size_t dt = total_dim(select(layout, traced));
  // rows_by_trace[t][k] = flat index with traced digits t and kept digits k
  std::vector<std::size_t> flat_of(dk * dt);
  for (std::size_t flat = 0; flat < map.dim(); ++flat)
    flat_of[map.sub_index(flat, traced) * dk + map.sub_index(flat, keep)] = flat;
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t t = 0; t < dt; ++t) {
    const std::size_t* rows = &flat_of[t * dk];
    for (std::size_t i = 0; i < dk; ++i)
      for (std::size_t j = 0; j < dk; ++j)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
            m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(rows[j]));
  }
  return out;
}

// psi reshaped as a (kept x traced) matrix.
inline CMatrix bipartition(const CVector& psi, const Layout& layout, const std::vector<std::size_t>& keep) {
  const IndexMap map(layout);
  const auto traced = complement(layout, keep);
  const std::size_t dk = total_dim(select(layout, keep));
  const std::size_t dt = total_dim(select(layout, traced));
  CMatrix out(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dt));
  for (std::size_t flat = 0; flat < map.dim(); ++flat)
    out(static_cast<Eigen::Index>(map.sub_index(flat, keep)), static_cast<Eigen::Index>(map.sub_index(flat, traced))) =
        psi(static_cast<Eigen::Index>(flat));
  return out;
}

}  // namespace detail

// Partial trace onto `keep`; the result's subsystems follow the order of `keep`.
inline DensityOperator partial_trace(const DensityOperator& rho, const Labels& keep) {
  require(!keep.empty(), "partial_trace: keep set must be non-empty");
  const auto idx = detail::resolve(rho.systems(), keep);
  return DensityOperator(detail::reduce_matrix(rho.matrix(), rho.systems(), idx), detail::select(rho.systems(), idx));
}

inline DensityOperator partial_trace(const PureStateVector& psi, const Labels& keep) {
  require(!keep.empty(), "partial_trace: keep set must be non-empty");
  const auto idx = detail::resolve(psi.systems(), keep);
  const CMatrix m = detail::bipartition(psi.amplitudes(), psi.systems(), idx);
  return DensityOperator(m * m.adjoint(), detail::select(psi.systems(), idx));
}

// Embedding of an operator acting on `targets` (in that order) into the full
// space; the output layout is the untouched systems in their original order
// followed by `outputs`.
inline CMatrix embed_operator(const CMatrix& op, const Layout& layout, const Labels& targets, const Layout& outputs,
                              Layout* out_layout = nullptr) {
  const auto tgt = detail::resolve(layout, targets);
  const auto rest = detail::complement(layout, tgt);
  const std::size_t d_in = total_dim(detail::select(layout, tgt));
  const std::size_t d_out = total_dim(outputs);
  require(static_cast<std::size_t>(op.cols()) == d_in, "embed_operator: operator input dimension mismatch");
  require(static_cast<std::size_t>(op.rows()) == d_out, "embed_operator: operator output dimension mismatch");

  Layout result = detail::select(layout, rest);
  result.insert(result.end(), outputs.begin(), outputs.end());
  validate_layout(result);

  const detail::IndexMap map(layout);
  CMatrix full = CMatrix::Zero(static_cast<Eigen::Index>(total_dim(result)), static_cast<Eigen::Index>(map.dim()));
  for (std::size_t flat = 0; flat < map.dim(); ++flat) {
    const std::size_t r = map.sub_index(flat, rest);
    const std::size_t t = map.sub_index(flat, tgt);
    for (std::size_t o = 0; o < d_out; ++o)
      full(static_cast<Eigen::Index>(r * d_out + o), static_cast<Eigen::Index>(flat)) =
          op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(t));
  }
  if (out_layout) *out_layout = std::move(result);
  return full;
}

inline double isometry_defect(const CMatrix& v) {
  return (v.adjoint() * v - CMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

// U rho U^dagger for an isometry from `targets` to `outputs`.
inline DensityOperator apply_isometry(const DensityOperator& rho, const CMatrix& isometry, const Labels& targets,
                                      const Layout& outputs) {
  require(isometry_defect(isometry) <= kIsometryTolerance, "apply_isometry: operator is not an isometry");
  Layout layout;
  const CMatrix full = embed_operator(isometry, rho.systems(), targets, outputs, &layout);
  return DensityOperator(full * rho.matrix() * full.adjoint(), std::move(layout));
}

inline PureStateVector apply_isometry(const PureStateVector& psi, const CMatrix& isometry, const Labels& targets,
                                      const Layout& outputs) {
  require(isometry_defect(isometry) <= kIsometryTolerance, "apply_isometry: operator is not an isometry");
  Layout layout;
  const CMatrix full = embed_operator(isometry, psi.systems(), targets, outputs, &layout);
  CVector out = full * psi.amplitudes();
  out /= out.norm();
  return PureStateVector(std::move(out), std::move(layout));
}

// Channel given by Kraus operators K_k : targets -> outputs, sum_k K_k^dagger K_k = I.
inline DensityOperator apply_kraus(const DensityOperator& rho, const std::vector<CMatrix>& kraus, const Labels& targets,
                                   const Layout& outputs) {
  require(!kraus.empty(), "apply_kraus: at least one Kraus operator required");
  CMatrix completeness = CMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) {
    require(k.cols() == kraus.front().cols() && k.rows() == kraus.front().rows(), "apply_kraus: inconsistent shapes");
    completeness += k.adjoint() * k;
  }
  require((completeness - CMatrix::Identity(completeness.rows(), completeness.cols())).cwiseAbs().maxCoeff() <=
              kIsometryTolerance,
          "apply_kraus: Kraus operators are not trace preserving");
  Layout layout;
  CMatrix out;
  for (const auto& k : kraus) {
    const CMatrix full = embed_operator(k, rho.systems(), targets, outputs, &layout);
    CMatrix term = full * rho.matrix() * full.adjoint();
    out = out.size() ? (out + term).eval() : term;
  }
  return DensityOperator(std::move(out), std::move(layout));
}

// |psi> = sum_i sqrt(p_i) |phi_i> |i>_R with R of dimension rank(rho).
inline PureStateVector purify(const DensityOperator& rho, const std::string& reference = "R") {
  constexpr double floor = 1e-12;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  const auto& w = es.eigenvalues();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = w.size(); i-- > 0;)
    if (w(i) > floor) support.push_back(i);
  if (support.empty()) fail(ErrorCode::numerical, "purify: state has no support above 1e-12");
  const auto rank = static_cast<Eigen::Index>(support.size());
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(rho.dim()) * rank);
  for (Eigen::Index r = 0; r < rank; ++r) {
    const double amp = std::sqrt(w(support[static_cast<std::size_t>(r)]));
    const auto v = es.eigenvectors().col(support[static_cast<std::size_t>(r)]);
    for (Eigen::Index a = 0; a < v.size(); ++a) psi(a * rank + r) = amp * v(a);
  }
  psi /= psi.norm();
  Layout systems = rho.systems();
  systems.push_back({reference, static_cast<std::size_t>(rank)});
  return PureStateVector(std::move(psi), std::move(systems));
}

}  // namespace bb::findim
