#pragma once

// Phase-insensitive single-mode bosonic Gaussian channels, their loss/amplifier
// decompositions, the squashed dilation chains built on them, and the
// secret-key-agreement capacity upper bounds evaluated from those chains.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bb/error.hpp"
#include "bb/gaussian.hpp"
#include "bb/gfunc.hpp"

namespace bb::bounds {

using gaussian::GaussianState;
using gaussian::Real;

enum class ChannelKind { thermal, amplifier, additive_noise };

inline const char* to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::thermal: return "thermal";
    case ChannelKind::amplifier: return "amplifier";
    case ChannelKind::additive_noise: return "additive_noise";
  }
  return "unknown";
}

// Single-mode phase-insensitive action on covariance matrices: V -> scale*V + noise*I.
struct CovarianceAction {
  Real scale = 1;
  Real noise = 0;
};

struct ChannelSpec {
  ChannelKind kind = ChannelKind::thermal;
  double eta = 1;   // thermal
  double gain = 1;  // amplifier
  double nb = 0;    // thermal, amplifier
  double xi = 0;    // additive_noise

  static ChannelSpec thermal(double eta, double nb) {
    require(eta > 0 && eta < 1, "thermal channel: eta must lie in (0,1)");
    require(std::isfinite(nb) && nb >= 0, "thermal channel: N_B must be >= 0");
    return {ChannelKind::thermal, eta, 1, nb, 0};
  }
  static ChannelSpec amplifier(double gain, double nb) {
    require(std::isfinite(gain) && gain > 1, "amplifier channel: gain must be > 1");
    require(std::isfinite(nb) && nb >= 0, "amplifier channel: N_B must be >= 0");
    return {ChannelKind::amplifier, 1, gain, nb, 0};
  }
  static ChannelSpec additive_noise(double xi) {
    require(std::isfinite(xi) && xi >= 0, "additive-noise channel: xi must be >= 0");
    return {ChannelKind::additive_noise, 1, 1, 0, xi};
  }

  CovarianceAction action() const {
    const Real env = 2 * static_cast<Real>(nb) + 1;
    switch (kind) {
      case ChannelKind::thermal: return {Real(eta), (1 - Real(eta)) * env};
      case ChannelKind::amplifier: return {Real(gain), (Real(gain) - 1) * env};
      case ChannelKind::additive_noise: return {1, 2 * Real(xi)};
    }
    return {};
  }
};

inline bool is_entanglement_breaking(const ChannelSpec& ch) {
  switch (ch.kind) {
    case ChannelKind::thermal: return ch.eta <= (1 - ch.eta) * ch.nb;
    case ChannelKind::additive_noise: return ch.xi >= 1;
    case ChannelKind::amplifier: break;
  }
  fail(ErrorCode::unsupported, "is_entanglement_breaking: amplifier channels are not supported");
}

enum class Order { loss_then_amp, amp_then_loss };

inline const char* to_string(Order order) {
  return order == Order::loss_then_amp ? "loss_then_amp" : "amp_then_loss";
}

// Pure-loss channel of transmissivity T composed with a pure amplifier of gain G.
struct Decomposition {
  Order order = Order::loss_then_amp;
  Real transmissivity = 1;
  Real gain = 1;

  CovarianceAction action() const {
    const Real t = transmissivity, g = gain;
    if (order == Order::loss_then_amp) return {g * t, g * (1 - t) + g - 1};
    return {t * g, t * (g - 1) + 1 - t};
  }
};

namespace detail {

inline void check_decomposition(const Decomposition& d, const ChannelSpec& ch) {
  constexpr Real tol = 1e-12L;
  const auto want = ch.action();
  const auto got = d.action();
  if (std::abs(want.scale - got.scale) > tol * std::max<Real>(1, std::abs(want.scale)) ||
      std::abs(want.noise - got.noise) > tol * std::max<Real>(1, std::abs(want.noise)))
    fail(ErrorCode::numerical, "decomposition does not reproduce the channel's covariance action");
}

}  // namespace detail

// N = A_{G,0} o L_{T,0}
inline Decomposition decompose_loss_then_amp(const ChannelSpec& ch) {
  Decomposition d{Order::loss_then_amp, 1, 1};
  switch (ch.kind) {
    case ChannelKind::thermal:
      d.gain = 1 + (1 - Real(ch.eta)) * Real(ch.nb);
      d.transmissivity = Real(ch.eta) / d.gain;
      break;
    case ChannelKind::amplifier:
      d.gain = Real(ch.gain) + (Real(ch.gain) - 1) * Real(ch.nb);
      d.transmissivity = Real(ch.gain) / d.gain;
      break;
    case ChannelKind::additive_noise:
      d.gain = 1 + Real(ch.xi);
      d.transmissivity = 1 / d.gain;
      break;
  }
  detail::check_decomposition(d, ch);
  return d;
}

// N = L_{T,0} o A_{G,0}; exists only when the channel is not entanglement breaking.
inline Decomposition decompose_amp_then_loss(const ChannelSpec& ch) {
  Decomposition d{Order::amp_then_loss, 1, 1};
  Real gain_times_t = 1;
  switch (ch.kind) {
    case ChannelKind::thermal:
      d.transmissivity = Real(ch.eta) - (1 - Real(ch.eta)) * Real(ch.nb);
      gain_times_t = Real(ch.eta);
      break;
    case ChannelKind::amplifier:
      d.transmissivity = 1 - (Real(ch.gain) - 1) * Real(ch.nb);
      gain_times_t = Real(ch.gain);
      break;
    case ChannelKind::additive_noise:
      d.transmissivity = 1 - Real(ch.xi);
      break;
  }
  if (!(d.transmissivity > 0))
    fail(ErrorCode::entanglement_breaking,
         "amplifier-then-loss decomposition requires a channel that is not entanglement breaking");
  d.gain = gain_times_t / d.transmissivity;
  detail::check_decomposition(d, ch);
  return d;
}

// Direct covariance-matrix action of the channel on a single-mode state.
inline GaussianState apply_channel(const ChannelSpec& ch, const GaussianState& input) {
  require(input.modes() == 1, "apply_channel: single-mode input required");
  const auto act = ch.action();
  gaussian::Vector mean = std::sqrt(act.scale) * input.mean();
  gaussian::Matrix cov = act.scale * input.cov() + act.noise * gaussian::Matrix::Identity(2, 2);
  return GaussianState(std::move(mean), std::move(cov), input.labels());
}

// Same channel realized through its decomposition: beamsplitter and two-mode
// squeezer dilations with vacuum environments, environments traced out.
inline GaussianState apply_decomposition(const Decomposition& d, const GaussianState& input) {
  require(input.modes() == 1, "apply_decomposition: single-mode input required");
  auto state = gaussian::tensor(input.relabeled({"a"}), gaussian::vacuum_state({"env_loss", "env_amp"}));
  const auto loss = gaussian::beamsplitter(d.transmissivity);
  const auto amp = gaussian::two_mode_squeezer(d.gain);
  if (d.order == Order::loss_then_amp) {
    state = gaussian::apply(loss, state, gaussian::ModeList{0, 1});
    state = gaussian::apply(amp, state, gaussian::ModeList{0, 2});
  } else {
    state = gaussian::apply(amp, state, gaussian::ModeList{0, 2});
    state = gaussian::apply(loss, state, gaussian::ModeList{0, 1});
  }
  return gaussian::reduce(state, gaussian::ModeList{0}).relabeled(input.labels());
}

struct DilationStep {
  std::string name;
  gaussian::SymplecticTransform transform;
  std::array<std::size_t, 2> modes;
};

// Isometry A -> B E1' E2' F1' F2': the channel dilation in the decomposition's
// order followed by squashing beamsplitters on the loss environment
// (eta2 -> E1', F1') and the amplifier environment (eta3 -> E2', F2').
//
// Working modes: 0 input/B, 1 loss environment/E1', 2 amplifier environment/E2',
// 3 F1 ancilla/F1', 4 F2 ancilla/F2'. All ancillas start in vacuum.
class DilationChain {
 public:
  static constexpr std::size_t kModes = 5;
  static constexpr std::array<const char*, kModes> kRoles = {"B", "E1'", "E2'", "F1'", "F2'"};

  DilationChain(Decomposition decomposition, double eta2, double eta3)
      : decomposition_(decomposition), eta2_(eta2), eta3_(eta3) {
    require(eta2 > 0 && eta2 < 1 && eta3 > 0 && eta3 < 1,
            "build_dilation: squashing transmissivities must lie in (0,1)");
    const auto loss = gaussian::beamsplitter(decomposition.transmissivity);
    const auto amp = gaussian::two_mode_squeezer(decomposition.gain);
    if (decomposition.order == Order::loss_then_amp) {
      steps_.push_back({"loss", loss, {0, 1}});
      steps_.push_back({"amplifier", amp, {0, 2}});
    } else {
      steps_.push_back({"amplifier", amp, {0, 2}});
      steps_.push_back({"loss", loss, {0, 1}});
    }
    steps_.push_back({"squash_loss_env", gaussian::beamsplitter(eta2), {1, 3}});
    steps_.push_back({"squash_amp_env", gaussian::beamsplitter(eta3), {2, 4}});
  }

  const Decomposition& decomposition() const { return decomposition_; }
  const std::vector<DilationStep>& steps() const { return steps_; }
  double eta2() const { return eta2_; }
  double eta3() const { return eta3_; }

  // Output state on modes labeled B, E1', E2', F1', F2'.
  GaussianState apply(const GaussianState& input) const {
    require(input.modes() == 1, "DilationChain: single-mode input required");
    auto state = gaussian::tensor(input.relabeled({"in"}), gaussian::vacuum_state({"env1", "env2", "f1", "f2"}));
    for (const auto& step : steps_)
      state = gaussian::apply(step.transform, state, gaussian::ModeList{step.modes[0], step.modes[1]});
    return state.relabeled({kRoles.begin(), kRoles.end()});
  }

 private:
  Decomposition decomposition_;
  double eta2_;
  double eta3_;
  std::vector<DilationStep> steps_;
};

inline DilationChain build_dilation(const Decomposition& d, double eta2 = 0.5, double eta3 = 0.5) {
  return DilationChain(d, eta2, eta3);
}

struct Objective {
  double h_be = 0;  // H(B|E1'E2')
  double h_bf = 0;  // H(B|F1'F2')
  double relaxed() const { return 0.5 * (h_be + h_bf); }
  double sum() const { return h_be + h_bf; }
};

inline Objective evaluate_objective(const DilationChain& chain, const GaussianState& input) {
  const auto out = chain.apply(input);
  const gaussian::ModeList b{0}, e{1, 2}, f{3, 4};
  return {static_cast<double>(gaussian::conditional_entropy(out, b, e)),
          static_cast<double>(gaussian::conditional_entropy(out, b, f))};
}

inline Objective evaluate_objective(const DilationChain& chain, double ns) {
  require(std::isfinite(ns) && ns >= 0, "evaluate_objective: N_S must be >= 0");
  return evaluate_objective(chain, gaussian::thermal_state(ns));
}

// 1/2 [H(B|E1'E2') + H(B|F1'F2')] for the loss-then-amplifier dilation with
// 50-50 squashers, thermal input of mean photon number ns.
inline double gew16_bound(const ChannelSpec& ch, double ns) {
  return evaluate_objective(build_dilation(decompose_loss_then_amp(ch)), ns).relaxed();
}

// H(B|E1'E2') for the amplifier-then-loss dilation with 50-50 squashers.
inline double dsw18_bound(const ChannelSpec& ch, double ns) {
  if (ch.kind != ChannelKind::thermal) fail(ErrorCode::unsupported, "dsw18_bound: thermal channels only");
  if (is_entanglement_breaking(ch))
    fail(ErrorCode::entanglement_breaking, "dsw18_bound: channel is entanglement breaking (eta <= (1-eta) N_B)");
  return evaluate_objective(build_dilation(decompose_amp_then_loss(ch)), ns).h_be;
}

// Closed-form bound after clipping at zero; `raw` keeps the unclipped value.
struct ClippedBound {
  double bits = 0;
  double raw = 0;
  bool clipped = false;
};

inline double pure_loss_bound(double eta, double ns) {
  require(eta >= 0 && eta <= 1, "pure_loss_bound: eta must lie in [0,1]");
  require(std::isfinite(ns) && ns >= 0, "pure_loss_bound: N_S must be >= 0");
  const Real n = ns, t = eta;
  return static_cast<double>(g<Real>(n * (1 + t) / 2) - g<Real>(n * (1 - t) / 2));
}

inline double pure_amp_bound(double gain, double ns) {
  require(std::isfinite(gain) && gain >= 1, "pure_amp_bound: gain must be >= 1");
  require(std::isfinite(ns) && ns >= 0, "pure_amp_bound: N_S must be >= 0");
  const Real n = ns, G = gain;
  return static_cast<double>(g<Real>(n * (G + 1) / 2 + (G - 1) / 2) - g<Real>((n + 1) * (G - 1) / 2));
}

// -log2((1-eta) eta^N_B) - g(N_B), independent of the input energy.
inline ClippedBound plob_bound(double eta, double nb) {
  require(eta > 0 && eta < 1, "plob_bound: eta must lie in (0,1)");
  require(std::isfinite(nb) && nb >= 0, "plob_bound: N_B must be >= 0");
  const Real t = eta, n = nb;
  const Real raw = -std::log2(1 - t) - n * std::log2(t) - g<Real>(n);
  ClippedBound out;
  out.raw = static_cast<double>(raw);
  out.clipped = raw < 0;
  out.bits = out.clipped ? 0.0 : out.raw;
  return out;
}

// Infinite-energy limit of H(B|E1'E2') for the amplifier-then-loss dilation:
//   [(1-T^2) G log2((1+T)/(1-T)) - (G^2-1) T log2((G+1)/(G-1))] / (1 - G^2 T^2).
// The singularity at G T = 1 is removable; that branch uses the analytic limit
//   (G^2+1)/(2G) log2((G+1)/(G-1)) - 1/ln 2.
inline double limit_bound(double transmissivity, double gain) {
  require(transmissivity > 0 && transmissivity <= 1, "limit_bound: T must lie in (0,1]");
  require(std::isfinite(gain) && gain >= 1, "limit_bound: G must be >= 1");
  const Real t = transmissivity, G = gain;
  const Real inv_ln2 = 1 / std::numbers::ln2_v<Real>;
  if (t == 1 && G == 1) return std::numeric_limits<double>::infinity();
  if (G == 1) return static_cast<double>(std::log2((1 + t) / (1 - t)));
  if (t == 1) return static_cast<double>(std::log2((G + 1) / (G - 1)));
  const Real amp_term = std::log2((G + 1) / (G - 1));
  const Real denom = 1 - G * G * t * t;
  if (std::abs(denom) < 1e-9L) return static_cast<double>((G * G + 1) / (2 * G) * amp_term - inv_ln2);
  const Real loss_term = std::log2((1 + t) / (1 - t));
  return static_cast<double>(((1 - t * t) * G * loss_term - (G * G - 1) * t * amp_term) / denom);
}

}  // namespace bb::bounds
