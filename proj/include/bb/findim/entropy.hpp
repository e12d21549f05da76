#pragma once

// Spectral entropic quantities. All functions accept either a DensityOperator
// or a PureStateVector; pure-state marginals are taken on the smaller side of
// the bipartition.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "bb/error.hpp"
#include "bb/findim/state.hpp"
#include "bb/gfunc.hpp"

namespace bb::findim {

// Eigenvalues below this count as zero when deciding support.
inline constexpr double kSupportFloor = 1e-12;

template <class S>
concept State = std::same_as<S, DensityOperator> || std::same_as<S, PureStateVector>;

namespace detail {

inline double shannon_bits(const Eigen::VectorXd& p) {
  double h = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0) h -= p(i) * std::log2(p(i));
  return std::max(0.0, h);
}

inline double spectral_entropy(const CMatrix& m) {
  if (m.rows() == 1) return 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return shannon_bits(es.eigenvalues());
}

inline void require_disjoint(std::initializer_list<const Labels*> sets) {
  std::unordered_set<std::string> seen;
  for (const auto* s : sets)
    for (const auto& l : *s) require(seen.insert(l).second, "subsystem '" + l + "' appears in more than one argument");
}

inline Labels join(std::initializer_list<const Labels*> sets) {
  Labels out;
  for (const auto* s : sets) out.insert(out.end(), s->begin(), s->end());
  return out;
}

}  // namespace detail

inline double entropy(const DensityOperator& rho) { return detail::spectral_entropy(rho.matrix()); }
inline double entropy(const PureStateVector&) { return 0; }

// H of the marginal on `labels`; empty set gives 0.
inline double entropy(const DensityOperator& rho, const Labels& labels) {
  if (labels.empty()) return 0;
  const auto idx = detail::resolve(rho.systems(), labels);
  return detail::spectral_entropy(detail::reduce_matrix(rho.matrix(), rho.systems(), idx));
}

inline double entropy(const PureStateVector& psi, const Labels& labels) {
  if (labels.empty()) return 0;
  auto idx = detail::resolve(psi.systems(), labels);
  auto rest = detail::complement(psi.systems(), idx);
  if (rest.empty()) return 0;
  if (total_dim(detail::select(psi.systems(), rest)) < total_dim(detail::select(psi.systems(), idx))) std::swap(idx, rest);
  const CMatrix m = detail::bipartition(psi.amplitudes(), psi.systems(), idx);
  return detail::spectral_entropy(m * m.adjoint());
}

template <State S>
double mutual_information(const S& s, const Labels& a, const Labels& b) {
  detail::require_disjoint({&a, &b});
  require(!a.empty() && !b.empty(), "mutual_information: both systems must be non-empty");
  return entropy(s, a) + entropy(s, b) - entropy(s, detail::join({&a, &b}));
}

// H(A|B) = H(AB) - H(B)
template <State S>
double conditional_entropy(const S& s, const Labels& a, const Labels& b) {
  detail::require_disjoint({&a, &b});
  require(!a.empty(), "conditional_entropy: A must be non-empty");
  return entropy(s, detail::join({&a, &b})) - entropy(s, b);
}

// I(A;B|E) = H(AE) + H(BE) - H(ABE) - H(E)
template <State S>
double cqmi(const S& s, const Labels& a, const Labels& b, const Labels& e = {}) {
  detail::require_disjoint({&a, &b, &e});
  require(!a.empty() && !b.empty(), "cqmi: A and B must be non-empty");
  return entropy(s, detail::join({&a, &e})) + entropy(s, detail::join({&b, &e})) -
         entropy(s, detail::join({&a, &b, &e})) - entropy(s, e);
}

namespace detail {

inline void check_parts(const std::vector<Labels>& parts, const Labels& e) {
  require(parts.size() >= 2, "total correlation: at least two parts required");
  std::unordered_set<std::string> seen(e.begin(), e.end());
  require(seen.size() == e.size(), "total correlation: duplicate label in conditioning system");
  for (const auto& p : parts) {
    require(!p.empty(), "total correlation: parts must be non-empty");
    for (const auto& l : p) require(seen.insert(l).second, "total correlation: parts overlap at '" + l + "'");
  }
}

inline Labels concat(const std::vector<Labels>& parts, std::size_t from, std::size_t to) {
  Labels out;
  for (std::size_t i = from; i < to; ++i) out.insert(out.end(), parts[i].begin(), parts[i].end());
  return out;
}

}  // namespace detail

// sum_{i>=2} I(A_i; A_1..A_{i-1} | E)
template <State S>
double conditional_total_correlation(const S& s, const std::vector<Labels>& parts, const Labels& e = {}) {
  detail::check_parts(parts, e);
  double total = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) total += cqmi(s, parts[i], detail::concat(parts, 0, i), e);
  return total;
}

// sum_{i>=2} I(A_i; A_1..A_{i-1} | A_{i+1}..A_m E)
template <State S>
double dual_total_correlation(const S& s, const std::vector<Labels>& parts, const Labels& e = {}) {
  detail::check_parts(parts, e);
  double total = 0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Labels cond = detail::concat(parts, i + 1, parts.size());
    cond.insert(cond.end(), e.begin(), e.end());
    total += cqmi(s, parts[i], detail::concat(parts, 0, i), cond);
  }
  return total;
}

namespace detail {

inline void require_same_layout(const Layout& a, const Layout& b) {
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].dim == b[i].dim;
  require(same, "states have mismatched dimensions");
}

inline CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// ||sqrt(rho) sqrt(sigma)||_1^2
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_layout(rho.systems(), sigma.systems());
  const CMatrix prod = detail::psd_sqrt(rho.matrix()) * detail::psd_sqrt(sigma.matrix());
  Eigen::JacobiSVD<CMatrix> svd(prod);
  const double f = svd.singularValues().sum();
  return std::clamp(f * f, 0.0, 1.0);
}

// ||rho - sigma||_1, in [0, 2]
inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_layout(rho.systems(), sigma.systems());
  const CMatrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(diff, Eigen::EigenvaluesOnly);
  return std::clamp(es.eigenvalues().cwiseAbs().sum(), 0.0, 2.0);
}

// D(rho||sigma) in bits; +inf when supp(rho) is not inside supp(sigma).
inline double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  detail::require_same_layout(rho.systems(), sigma.systems());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.matrix());
  const auto& w = es.eigenvalues();
  double cross = 0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    const auto v = es.eigenvectors().col(j);
    const double weight = std::real(v.dot(rho.matrix() * v));
    if (w(j) < kSupportFloor) {
      if (weight > kSupportFloor) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log2(w(j));
  }
  return std::max(0.0, cross - entropy(rho));
}

// sqrt(2 eps) log2 min(dA, dB) + g(sqrt(2 eps)), eps = ||rho - sigma||_1 / 2
inline double continuity_gap(double eps, std::size_t dim_a, std::size_t dim_b) {
  require(eps >= -1e-12 && eps <= 1 + 1e-12, "continuity_gap: eps must lie in [0,1]");
  require(dim_a >= 1 && dim_b >= 1, "continuity_gap: dimensions must be >= 1");
  const double r = std::sqrt(2 * std::clamp(eps, 0.0, 1.0));
  return r * std::log2(static_cast<double>(std::min(dim_a, dim_b))) + g(r);
}

inline double continuity_gap(const DensityOperator& rho, const DensityOperator& sigma, const Labels& a,
                             const Labels& b) {
  const double eps = trace_distance(rho, sigma) / 2;
  const auto dim_of = [&](const Labels& l) { return total_dim(detail::select(rho.systems(), detail::resolve(rho.systems(), l))); };
  return continuity_gap(eps, dim_of(a), dim_of(b));
}

}  // namespace bb::findim
