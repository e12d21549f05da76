#pragma once

// Rate-sum bounds for the pure-loss bosonic broadcast channel. A sender's mode
// is split among receivers B_i with transmissivities eta_i; the remainder
// eta_E = 1 - sum_i eta_i goes to the eavesdropper.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bb/error.hpp"
#include "bb/gaussian.hpp"
#include "bb/gfunc.hpp"

namespace bb::broadcast {

using gaussian::Real;

inline constexpr std::size_t kMaxReceivers = 16;

struct Receiver {
  std::string name;
  double eta = 0;
};

class BroadcastSpec {
 public:
  explicit BroadcastSpec(std::vector<Receiver> receivers) : receivers_(std::move(receivers)) {
    require(!receivers_.empty(), "BroadcastSpec: at least one receiver required");
    require(receivers_.size() <= kMaxReceivers, "BroadcastSpec: at most 16 receivers supported");
    std::unordered_set<std::string> names;
    Real total = 0;
    for (const auto& r : receivers_) {
      require(!r.name.empty(), "BroadcastSpec: receiver names must be non-empty");
      require(names.insert(r.name).second, "BroadcastSpec: duplicate receiver '" + r.name + "'");
      require(r.eta >= 0 && r.eta <= 1, "BroadcastSpec: transmissivities must lie in [0,1]");
      total += r.eta;
    }
    require(total <= 1 + 1e-12L, "BroadcastSpec: total transmissivity exceeds 1");
  }

  const std::vector<Receiver>& receivers() const { return receivers_; }
  std::size_t size() const { return receivers_.size(); }

  Real total_eta() const {
    Real s = 0;
    for (const auto& r : receivers_) s += r.eta;
    return s;
  }
  Real eve_eta() const { return std::max<Real>(0, 1 - total_eta()); }

  // Bit i set <=> receiver i belongs to the subset.
  std::uint32_t mask_of(const std::vector<std::string>& names) const {
    std::uint32_t mask = 0;
    for (const auto& n : names) {
      std::size_t i = 0;
      while (i < receivers_.size() && receivers_[i].name != n) ++i;
      require(i < receivers_.size(), "unknown receiver '" + n + "'");
      mask |= 1u << i;
    }
    return mask;
  }

  Real eta_of(std::uint32_t mask) const {
    Real s = 0;
    for (std::size_t i = 0; i < receivers_.size(); ++i)
      if (mask & (1u << i)) s += receivers_[i].eta;
    return s;
  }

  std::string name_of(std::uint32_t mask) const {
    std::string out;
    for (std::size_t i = 0; i < receivers_.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      if (!out.empty()) out += ',';
      out += receivers_[i].name;
    }
    return out;
  }

  std::uint32_t full_mask() const { return static_cast<std::uint32_t>((1ull << receivers_.size()) - 1); }

 private:
  std::vector<Receiver> receivers_;
};

namespace detail {

inline void check_subset(const BroadcastSpec& spec, std::uint32_t mask) {
  require(mask != 0, "broadcast: subset must be non-empty");
  require((mask & ~spec.full_mask()) == 0, "broadcast: subset refers to unknown receivers");
}

}  // namespace detail

// g(N_S (1 + eta_T - eta_Tbar)/2) - g(N_S (1 - eta_T - eta_Tbar)/2)
inline double broadcast_bound(const BroadcastSpec& spec, std::uint32_t subset, double ns) {
  detail::check_subset(spec, subset);
  require(std::isfinite(ns) && ns >= 0, "broadcast_bound: N_S must be >= 0");
  const Real in = spec.eta_of(subset);
  const Real out = spec.total_eta() - in;
  const Real n = ns;
  const Real lo = std::max<Real>(0, n * (1 - in - out) / 2);
  return static_cast<double>(g<Real>(n * (1 + in - out) / 2) - g<Real>(lo));
}

inline double broadcast_bound(const BroadcastSpec& spec, const std::vector<std::string>& subset, double ns) {
  return broadcast_bound(spec, spec.mask_of(subset), ns);
}

// N_S -> infinity: log2((1 + eta_T - eta_Tbar) / (1 - eta_T - eta_Tbar)); +inf when eta_B = 1.
inline double broadcast_bound_limit(const BroadcastSpec& spec, std::uint32_t subset) {
  detail::check_subset(spec, subset);
  const Real in = spec.eta_of(subset);
  const Real out = spec.total_eta() - in;
  const Real denom = 1 - in - out;
  if (denom <= 1e-15L) return std::numeric_limits<double>::infinity();
  return static_cast<double>(std::log2((1 + in - out) / denom));
}

inline double broadcast_bound_limit(const BroadcastSpec& spec, const std::vector<std::string>& subset) {
  return broadcast_bound_limit(spec, spec.mask_of(subset));
}

struct RegionEntry {
  std::uint32_t mask = 0;
  std::string subset;
  double bound_bits = 0;
};

// Every non-empty subset, in increasing bitmask order.
inline std::vector<RegionEntry> broadcast_region(const BroadcastSpec& spec, double ns) {
  std::vector<RegionEntry> out;
  out.reserve(spec.full_mask());
  for (std::uint32_t mask = 1; mask <= spec.full_mask(); ++mask)
    out.push_back({mask, spec.name_of(mask), broadcast_bound(spec, mask, ns)});
  return out;
}

// Beamsplitter cascade: the sender's mode passes receivers in order, each
// tapping exactly eta_i of the original power; the residual eta_E reaches
// Eve, whose mode is squashed by a 50-50 beamsplitter into E1, E2.
// Output modes: 0 = E1, 1..m = receivers in spec order, m+1 = E2.
inline gaussian::GaussianState broadcast_output_state(const BroadcastSpec& spec, const gaussian::GaussianState& input) {
  require(input.modes() == 1, "broadcast: single-mode input required");
  const std::size_t m = spec.size();
  std::vector<std::string> labels{"residual"};
  for (const auto& r : spec.receivers()) labels.push_back(r.name);
  labels.push_back("E2");
  auto state = gaussian::tensor(input.relabeled({"sender"}),
                                gaussian::vacuum_state(std::vector<std::string>(labels.begin() + 1, labels.end())));
  Real remaining = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const Real eta = spec.receivers()[i].eta;
    const Real tap = remaining > 0 ? std::min<Real>(1, eta / remaining) : 0;
    state = gaussian::apply(gaussian::beamsplitter(1 - tap), state, gaussian::ModeList{0, i + 1});
    remaining = std::max<Real>(0, remaining - eta);
  }
  state = gaussian::apply(gaussian::beamsplitter(0.5L), state, gaussian::ModeList{0, m + 1});
  labels[0] = "E1";
  return state.relabeled(labels);
}

inline gaussian::GaussianState broadcast_output_state(const BroadcastSpec& spec, double ns) {
  require(std::isfinite(ns) && ns >= 0, "broadcast: N_S must be >= 0");
  return broadcast_output_state(spec, gaussian::thermal_state(ns));
}

// H(T E1) - H(E1) on the cascade output for an arbitrary single-mode input.
inline double broadcast_objective(const BroadcastSpec& spec, std::uint32_t subset, const gaussian::GaussianState& input) {
  detail::check_subset(spec, subset);
  const auto state = broadcast_output_state(spec, input);
  gaussian::ModeList t_e1;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (subset & (1u << i)) t_e1.push_back(i + 1);
  t_e1.push_back(0);
  return static_cast<double>(gaussian::entropy(state, t_e1) - gaussian::entropy(state, gaussian::ModeList{0}));
}

// The same with the thermal input of mean photon number ns.
inline double broadcast_gaussian_check(const BroadcastSpec& spec, std::uint32_t subset, double ns) {
  detail::check_subset(spec, subset);
  require(std::isfinite(ns) && ns >= 0, "broadcast: N_S must be >= 0");
  return broadcast_objective(spec, subset, gaussian::thermal_state(ns));
}

inline double broadcast_gaussian_check(const BroadcastSpec& spec, const std::vector<std::string>& subset,
                                       double ns) {
  return broadcast_gaussian_check(spec, spec.mask_of(subset), ns);
}

}  // namespace bb::broadcast
