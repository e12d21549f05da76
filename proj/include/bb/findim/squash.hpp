#pragma once

// GHZ and private states, squashing channels and upper bounds on squashed
// entanglement by explicit extensions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bb/error.hpp"
#include "bb/findim/entropy.hpp"
#include "bb/findim/random.hpp"
#include "bb/findim/state.hpp"

namespace bb::findim {

// (1/sqrt K) sum_i |i>^{(x) m} on systems A1..Am.
inline PureStateVector ghz_state(std::size_t m, std::size_t k) {
  require(m >= 2, "ghz_state: m must be >= 2");
  require(k >= 2, "ghz_state: K must be >= 2");
  Layout systems;
  std::size_t dim = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    systems.push_back({"A" + std::to_string(i), k});
    require(dim <= (std::size_t{1} << 24) / k, "ghz_state: total dimension too large");
    dim *= k;
  }
  // index of |i...i> is i * (k^{m-1} + ... + 1)
  std::size_t stride = 0;
  for (std::size_t i = 0, p = 1; i < m; ++i, p *= k) stride += p;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < k; ++i) v(static_cast<Eigen::Index>(i * stride)) = 1.0 / std::sqrt(static_cast<double>(k));
  return PureStateVector(std::move(v), std::move(systems));
}

inline PureStateVector bell_state() { return ghz_state(2, 2); }

// U (Phi_K (x) sigma) U^dagger with U = sum_ij |i><i|_A (x) |j><j|_B (x) U_ij.
// `blocks[i * K + j]` acts on the shield; output systems are A, B, then the shield's.
inline DensityOperator private_state(std::size_t k, const DensityOperator& shield, const std::vector<CMatrix>& blocks) {
  require(k >= 2, "private_state: K must be >= 2");
  require(blocks.size() == k * k, "private_state: need K*K twisting blocks");
  const auto ds = static_cast<Eigen::Index>(shield.dim());
  for (const auto& u : blocks) {
    require(u.rows() == ds && u.cols() == ds, "private_state: twisting block has wrong size");
    require(isometry_defect(u) <= kIsometryTolerance, "private_state: twisting block is not unitary");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  // Phi_K (x) sigma is sum_{ab} |aa><bb|/K (x) sigma, so after twisting only the
  // (aa, bb) blocks survive: U_aa sigma U_bb^dagger / K.
  CMatrix out = CMatrix::Zero(kk * kk * ds, kk * kk * ds);
  for (Eigen::Index a = 0; a < kk; ++a)
    for (Eigen::Index b = 0; b < kk; ++b) {
      const CMatrix& ua = blocks[static_cast<std::size_t>(a * kk + a)];
      const CMatrix& ub = blocks[static_cast<std::size_t>(b * kk + b)];
      out.block((a * kk + a) * ds, (b * kk + b) * ds, ds, ds) = ua * shield.matrix() * ub.adjoint() / static_cast<double>(k);
    }
  Layout systems{{"A", k}, {"B", k}};
  systems.insert(systems.end(), shield.systems().begin(), shield.systems().end());
  return DensityOperator(std::move(out), std::move(systems));
}

struct KeyAudit {
  // max_ij |p(i,j) - delta_ij / K|
  double distribution_error = 0;
  // max_i || rho_E^{(ii)} - rho_E^{(00)} ||_1 over Eve's purifying system
  double eve_dependence = 0;
};

// Measures A and B of a state laid out as private_state produces.
inline KeyAudit key_audit(const DensityOperator& gamma, std::size_t k) {
  const auto& sys = gamma.systems();
  require(sys.size() >= 2 && sys[0].label == "A" && sys[1].label == "B" && sys[0].dim == k && sys[1].dim == k,
          "key_audit: expected key systems A, B of dimension K first");
  KeyAudit audit;
  const auto psi = purify(gamma, "Eve");
  const auto abe = partial_trace(psi, Labels{"A", "B", "Eve"});
  const auto de = static_cast<Eigen::Index>(psi.systems().back().dim);
  const auto kk = static_cast<Eigen::Index>(k);
  std::vector<CMatrix> conditional;
  for (Eigen::Index i = 0; i < kk; ++i)
    for (Eigen::Index j = 0; j < kk; ++j) {
      const CMatrix blk = abe.matrix().block((i * kk + j) * de, (i * kk + j) * de, de, de);
      const double p = blk.trace().real();
      const double want = i == j ? 1.0 / static_cast<double>(k) : 0.0;
      audit.distribution_error = std::max(audit.distribution_error, std::abs(p - want));
      if (i == j && p > 0) conditional.push_back(blk / p);
    }
  for (std::size_t i = 1; i < conditional.size(); ++i) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(conditional[i] - conditional[0], Eigen::EigenvaluesOnly);
    audit.eve_dependence = std::max(audit.eve_dependence, es.eigenvalues().cwiseAbs().sum());
  }
  return audit;
}

// Channel E -> E' given by Kraus operators of shape (output_dim x input_dim).
class SquashingChannel {
 public:
  explicit SquashingChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
    require(!kraus_.empty(), "SquashingChannel: at least one Kraus operator required");
    const auto rows = kraus_.front().rows();
    const auto cols = kraus_.front().cols();
    require(rows >= 1 && cols >= 1, "SquashingChannel: empty Kraus operator");
    CMatrix sum = CMatrix::Zero(cols, cols);
    for (const auto& k : kraus_) {
      require(k.rows() == rows && k.cols() == cols, "SquashingChannel: Kraus operators have inconsistent shapes");
      sum += k.adjoint() * k;
    }
    require((sum - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff() <= kIsometryTolerance,
            "SquashingChannel: Kraus operators violate completeness");
  }

  static SquashingChannel identity(std::size_t dim) {
    return SquashingChannel({CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))});
  }

  // Discards E entirely.
  static SquashingChannel discard(std::size_t dim) {
    std::vector<CMatrix> kraus;
    for (std::size_t i = 0; i < dim; ++i) {
      CMatrix k = CMatrix::Zero(1, static_cast<Eigen::Index>(dim));
      k(0, static_cast<Eigen::Index>(i)) = 1;
      kraus.push_back(std::move(k));
    }
    return SquashingChannel(std::move(kraus));
  }

  const std::vector<CMatrix>& kraus() const { return kraus_; }
  std::size_t input_dim() const { return static_cast<std::size_t>(kraus_.front().cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(kraus_.front().rows()); }

 private:
  std::vector<CMatrix> kraus_;
};

namespace detail {

// psi on (kept..., E) with E last, reshaped as (kept x E); the squashed state
// lives on kept..., E'.
inline DensityOperator squash(const CMatrix& m, const Layout& kept, const SquashingChannel& ch,
                              const std::string& label) {
  const auto dk = m.rows();
  const auto dout = static_cast<Eigen::Index>(ch.output_dim());
  CMatrix rho = CMatrix::Zero(dk * dout, dk * dout);
  for (const auto& k : ch.kraus()) {
    // column-major (E' x kept) flattens to kept * dE' + e'
    const CMatrix y = k * m.transpose();
    const Eigen::Map<const CVector> v(y.data(), y.size());
    rho.noalias() += v * v.adjoint();
  }
  Layout systems = kept;
  systems.push_back({label, ch.output_dim()});
  const double tr = rho.trace().real();
  return DensityOperator(rho / tr, std::move(systems));
}

}  // namespace detail

struct EsqOptions {
  std::size_t restarts = 0;  // random-restart local searches, 0 disables
  std::size_t output_dim = 2;
  std::size_t kraus_count = 2;
  std::size_t max_evaluations = 4000;  // per restart
  std::uint64_t seed = 0;
};

struct EsqResult {
  double bits = 0;          // best upper bound found
  double trivial_bits = 0;  // identity squasher
  std::size_t extension_dim = 0;
  std::optional<std::size_t> best_candidate;  // index into candidates, if one won
  bool from_search = false;
};

// Upper bound on E_sq(A;B): half the CQMI of the purification of rho_AB after
// each squashing channel on the purifying system. The identity squasher is
// always included; candidates must take the purifying dimension (rank rho_AB).
inline EsqResult esq_upper(const DensityOperator& rho, const Labels& a, const Labels& b,
                           const std::vector<SquashingChannel>& candidates = {}, const EsqOptions& opt = {}) {
  detail::require_disjoint({&a, &b});
  require(!a.empty() && !b.empty(), "esq_upper: A and B must be non-empty");
  const auto ab_labels = detail::join({&a, &b});
  const auto rho_ab = partial_trace(rho, ab_labels);
  const auto psi = purify(rho_ab, "E");
  const Layout kept = rho_ab.systems();
  const std::size_t de = psi.systems().back().dim;
  const CMatrix m = detail::bipartition(psi.amplitudes(), psi.systems(), detail::resolve(psi.systems(), ab_labels));

  const auto evaluate = [&](const SquashingChannel& ch) {
    return 0.5 * cqmi(detail::squash(m, kept, ch, "E'"), a, b, Labels{"E'"});
  };

  EsqResult res;
  res.extension_dim = de;
  res.trivial_bits = 0.5 * cqmi(psi, a, b, Labels{"E"});
  res.bits = res.trivial_bits;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    require(candidates[i].input_dim() == de,
            "esq_upper: candidate " + std::to_string(i) + " expects input dimension " +
                std::to_string(candidates[i].input_dim()) + " but the extension has " + std::to_string(de));
    const double v = evaluate(candidates[i]);
    if (v < res.bits) {
      res.bits = v;
      res.best_candidate = i;
    }
  }

  if (opt.restarts == 0) return res;
  require(opt.output_dim >= 1 && opt.kraus_count >= 1 && opt.output_dim * opt.kraus_count >= de,
          "esq_upper: search needs output_dim * kraus_count >= extension dimension");
  const auto rows = static_cast<Eigen::Index>(opt.output_dim * opt.kraus_count);
  const auto cols = static_cast<Eigen::Index>(de);
  const auto channel_of = [&](const CMatrix& g) {
    const CMatrix v = orthonormalize(g);
    std::vector<CMatrix> kraus;
    for (std::size_t k = 0; k < opt.kraus_count; ++k)
      kraus.push_back(v.middleRows(static_cast<Eigen::Index>(k * opt.output_dim), static_cast<Eigen::Index>(opt.output_dim)));
    return SquashingChannel(std::move(kraus));
  };

  Rng rng(opt.seed);
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    CMatrix g = gaussian_matrix(rng, rows, cols);
    double best = evaluate(channel_of(g));
    std::size_t evals = 1;
    double step = 0.5;
    // coordinate descent on real and imaginary parts of g
    while (step > 1e-3 && evals < opt.max_evaluations) {
      bool improved = false;
      for (Eigen::Index idx = 0; idx < 2 * g.size() && evals < opt.max_evaluations; ++idx) {
        auto& z = g.data()[idx / 2];
        const Complex unit = idx % 2 ? Complex(0, 1) : Complex(1, 0);
        for (double sgn : {1.0, -1.0}) {
          const Complex old = z;
          z += sgn * step * unit;
          const double v = evaluate(channel_of(g));
          ++evals;
          if (v < best - 1e-14) {
            best = v;
            improved = true;
            break;
          }
          z = old;
        }
      }
      if (!improved) step /= 2;
    }
    if (best < res.bits) {
      res.bits = best;
      res.best_candidate.reset();
      res.from_search = true;
    }
  }
  return res;
}

// Half the total correlation of the state itself (extension system trivial),
// an upper bound on multipartite squashed entanglement.
template <State S>
double esq_trivial_extension(const S& s, const std::vector<Labels>& parts) {
  return 0.5 * conditional_total_correlation(s, parts);
}

}  // namespace bb::findim
