#pragma once

// Seeded property suites. Every check evaluates an invariant over independent
// trials (each trial gets its own generator seeded from (seed, check, trial)),
// reports the largest violation observed, and passes iff it is within tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bb/bounds.hpp"
#include "bb/broadcast.hpp"
#include "bb/error.hpp"
#include "bb/findim.hpp"
#include "bb/gaussian.hpp"
#include "bb/gfunc.hpp"
#include "bb/parallel.hpp"

namespace bb::verify {

using Rng = std::mt19937_64;

struct Check {
  std::string name;
  double max_violation = 0;
  double tolerance = 0;
  std::size_t trials = 0;
  bool passed = false;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

struct Options {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gaussian", "bounds", "findim", "broadcast"};
  return names;
}

inline Rng trial_rng(std::uint64_t seed, std::uint32_t check, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), check,
                    static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

namespace detail {

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Builds checks one after another, numbering them for seeding.
class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, const Options& opt) : opt_(opt) { report_.suite = std::move(suite); }

  // violation(rng, trial) >= 0; NaN counts as an infinite violation.
  void random(const std::string& name, double tol, std::size_t trials,
              const std::function<double(Rng&, std::size_t)>& violation) {
    const auto id = static_cast<std::uint32_t>(report_.checks.size());
    const auto v = parallel_map<double>(trials, [&](std::size_t t) {
      Rng rng = trial_rng(opt_.seed, id, t);
      return violation(rng, t);
    });
    add(name, tol, trials, v);
  }

  // Deterministic grid: each element is one trial.
  void grid(const std::string& name, double tol, const std::vector<double>& violations) {
    add(name, tol, violations.size(), violations);
  }

  std::size_t trials() const { return opt_.trials; }
  Report take() { return std::move(report_); }

 private:
  void add(const std::string& name, double tol, std::size_t trials, const std::vector<double>& v) {
    double worst = 0;
    for (double x : v) worst = std::isnan(x) ? std::numeric_limits<double>::infinity() : std::max(worst, x);
    report_.checks.push_back({name, worst, tol, trials, worst <= tol});
  }

  Options opt_;
  Report report_;
};

// --- Gaussian helpers -------------------------------------------------------

struct GaussianOps {
  std::vector<gaussian::SymplecticTransform> transforms;
  std::vector<gaussian::ModeList> targets;
};

// Random passive and active two-mode and single-mode transforms.
inline GaussianOps random_gaussian_ops(Rng& rng, std::size_t modes, std::size_t layers, double max_squeeze) {
  GaussianOps ops;
  for (std::size_t l = 0; l < layers; ++l) {
    if (modes >= 2) {
      const std::size_t i = pick(rng, modes);
      std::size_t j = pick(rng, modes - 1);
      if (j >= i) ++j;
      ops.transforms.push_back(gaussian::beamsplitter(uniform(rng, 0, 1)));
      ops.targets.push_back({i, j});
    }
    const std::size_t k = pick(rng, modes);
    ops.transforms.push_back(gaussian::phase_rotation(uniform(rng, 0, 2 * std::numbers::pi)));
    ops.targets.push_back({k});
    ops.transforms.push_back(gaussian::single_mode_squeezer(uniform(rng, -max_squeeze, max_squeeze)));
    ops.targets.push_back({pick(rng, modes)});
  }
  return ops;
}

inline gaussian::GaussianState apply_ops(const GaussianOps& ops, gaussian::GaussianState state) {
  for (std::size_t i = 0; i < ops.transforms.size(); ++i) state = gaussian::apply(ops.transforms[i], state, ops.targets[i]);
  return state;
}

inline gaussian::GaussianState random_thermal_product(Rng& rng, std::size_t modes, double max_n) {
  auto state = gaussian::thermal_state(uniform(rng, 0, max_n), "m0");
  for (std::size_t i = 1; i < modes; ++i)
    state = gaussian::tensor(state, gaussian::thermal_state(uniform(rng, 0, max_n), "m" + std::to_string(i)));
  return state;
}

inline gaussian::GaussianState random_mixed_gaussian(Rng& rng, std::size_t modes) {
  return apply_ops(random_gaussian_ops(rng, modes, 3, 0.5), random_thermal_product(rng, modes, 2));
}

inline gaussian::GaussianState random_pure_gaussian(Rng& rng, std::size_t modes) {
  return apply_ops(random_gaussian_ops(rng, modes, 4, 0.6), gaussian::vacuum_state(modes));
}

// Displaced squeezed thermal single-mode state with mean photon number n:
// |alpha|^2 = f n, squeezing sinh^2 r = s <= (1-f) n, thermal part fills the rest.
inline gaussian::GaussianState displaced_squeezed_thermal(Rng& rng, double n) {
  const double f = uniform(rng, 0, 1);
  const double rest = (1 - f) * n;
  const double s = uniform(rng, 0, 1) * rest;
  const double r = std::asinh(std::sqrt(s));
  const double nt = std::max(0.0, ((2 * rest + 1) / std::cosh(2 * r) - 1) / 2);
  auto state = gaussian::thermal_state(nt);
  state = gaussian::apply(gaussian::single_mode_squeezer(r), state, gaussian::ModeList{0});
  state = gaussian::apply(gaussian::phase_rotation(uniform(rng, 0, 2 * std::numbers::pi)), state, gaussian::ModeList{0});
  const double amp = std::sqrt(f * n), phase = uniform(rng, 0, 2 * std::numbers::pi);
  return gaussian::displace(state, 0, 2 * amp * std::cos(phase), 2 * amp * std::sin(phase));
}

inline double rel_diff(const gaussian::GaussianState& a, const gaussian::GaussianState& b) {
  const gaussian::Real scale = std::max<gaussian::Real>({1, a.cov().cwiseAbs().maxCoeff(), a.mean().cwiseAbs().maxCoeff()});
  const gaussian::Real d = std::max((a.cov() - b.cov()).cwiseAbs().maxCoeff(), (a.mean() - b.mean()).cwiseAbs().maxCoeff());
  return static_cast<double>(d / scale);
}

inline bounds::ChannelSpec random_thermal_channel(Rng& rng, double max_nb = 2) {
  // non entanglement breaking: eta > (1-eta) nb  <=>  eta > nb / (1 + nb)
  const double nb = uniform(rng, 0, max_nb);
  const double lo = nb / (1 + nb);
  return bounds::ChannelSpec::thermal(lo + (1 - lo) * uniform(rng, 0.02, 0.98), nb);
}

// --- finite-dimensional helpers --------------------------------------------

inline findim::Labels labels(std::initializer_list<const char*> l) { return findim::Labels(l.begin(), l.end()); }

}  // namespace detail

inline Report gaussian_suite(const Options& opt) {
  using namespace gaussian;
  detail::SuiteBuilder s("gaussian", opt);
  const std::size_t n = opt.trials;

  s.random("symplectic closure of generated transforms", 1e-10, n, [](Rng& rng, std::size_t) {
    const auto ops = detail::random_gaussian_ops(rng, 3, 4, 1.0);
    double worst = 0;
    for (const auto& t : ops.transforms) worst = std::max(worst, static_cast<double>(t.symplectic_defect()));
    return worst;
  });

  s.random("entropy invariance under global symplectic maps", 1e-10, n, [](Rng& rng, std::size_t) {
    const auto state = detail::random_thermal_product(rng, 3, 3);
    const auto out = detail::apply_ops(detail::random_gaussian_ops(rng, 3, 4, 0.5), state);
    return static_cast<double>(std::abs(entropy(out) - entropy(state)));
  });

  s.random("symplectic eigenvalues of pure states equal 1", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto state = detail::random_pure_gaussian(rng, 3);
    double worst = 0;
    for (Real nu : symplectic_eigenvalues(state)) worst = std::max(worst, static_cast<double>(std::abs(nu - 1)));
    return worst;
  });

  s.random("entropy additivity over tensor products", 1e-12, n, [](Rng& rng, std::size_t) {
    const auto a = detail::random_mixed_gaussian(rng, 1);
    const auto b = detail::random_mixed_gaussian(rng, 2).relabeled({"b0", "b1"});
    return static_cast<double>(std::abs(entropy(tensor(a, b)) - entropy(a) - entropy(b)));
  });

  s.random("conditional entropy duality on pure states", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto psi = detail::random_pure_gaussian(rng, 3);
    ModeList perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    const ModeList a{perm[0]}, b{perm[1]}, c{perm[2]};
    return static_cast<double>(std::abs(conditional_entropy(psi, a, b) + conditional_entropy(psi, a, c)));
  });

  {
    std::vector<double> v;
    for (int i = 1; i + 2 <= 1000; ++i) {
      const double x0 = 0.01 * i, x1 = 0.01 * (i + 1), x2 = 0.01 * (i + 2);
      const double d1 = g(x1) - g(x0), d2 = g(x2) - g(x1);
      // strictly increasing: d1 > 0; strictly concave: d2 < d1
      v.push_back(d1 > 0 && d2 < d1 ? 0.0 : 1.0);
    }
    s.grid("g strictly increasing and concave on [0.01, 10]", 0, v);
  }
  return s.take();
}

inline Report bounds_suite(const Options& opt) {
  using namespace bounds;
  detail::SuiteBuilder s("bounds", opt);
  const std::size_t n = opt.trials;

  s.random("decompositions reproduce the channel action (20 inputs per draw)", 1e-12, n, [](Rng& rng, std::size_t) {
    ChannelSpec ch;
    switch (detail::pick(rng, 3)) {
      case 0: ch = ChannelSpec::thermal(detail::uniform(rng, 0.01, 0.99), detail::uniform(rng, 0, 2)); break;
      case 1: ch = ChannelSpec::amplifier(detail::uniform(rng, 1.01, 5), detail::uniform(rng, 0, 2)); break;
      default: ch = ChannelSpec::additive_noise(detail::uniform(rng, 0, 2)); break;
    }
    std::vector<Decomposition> ds{decompose_loss_then_amp(ch)};
    try {
      ds.push_back(decompose_amp_then_loss(ch));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::entanglement_breaking) throw;
    }
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto input = detail::displaced_squeezed_thermal(rng, detail::uniform(rng, 0, 3));
      const auto want = apply_channel(ch, input);
      for (const auto& d : ds) {
        worst = std::max(worst, detail::rel_diff(want, apply_decomposition(d, input)));
        worst = std::max(worst, detail::rel_diff(want, gaussian::reduce(build_dilation(d).apply(input), gaussian::ModeList{0})));
      }
    }
    return worst;
  });

  s.random("squasher symmetry h_be = h_bf for both orders", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto ch = detail::random_thermal_channel(rng);
    const double ns = detail::uniform(rng, 0, 3);
    double worst = 0;
    for (const auto& d : {decompose_loss_then_amp(ch), decompose_amp_then_loss(ch)}) {
      const auto o = evaluate_objective(build_dilation(d), ns);
      worst = std::max(worst, std::abs(o.h_be - o.h_bf));
    }
    return worst;
  });

  {
    std::vector<double> v;
    for (const auto& ch : {ChannelSpec::thermal(0.9, 0.1), ChannelSpec::thermal(0.7, 1), ChannelSpec::thermal(0.6, 0.2),
                           ChannelSpec::thermal(0.1, 1e-3)}) {
      double prev_d = -1, prev_g = -1;
      for (int i = 0; i <= 100; ++i) {
        const double ns = 0.05 * i;
        const double d = dsw18_bound(ch, ns), gw = gew16_bound(ch, ns);
        v.push_back(std::max({0.0, prev_d - d, prev_g - gw}));
        prev_d = d;
        prev_g = gw;
      }
    }
    s.grid("bounds nondecreasing in N_S on [0, 5]", 1e-12, v);
  }

  {
    std::vector<double> v;
    for (int i = 51; i <= 99; ++i)
      for (double nb : {0.1, 1.0})
        for (double ns : {0.1, 1.0}) {
          const auto ch = ChannelSpec::thermal(0.01 * i, nb);
          if (is_entanglement_breaking(ch)) continue;
          v.push_back(std::max(0.0, dsw18_bound(ch, ns) - gew16_bound(ch, ns)));
        }
    s.grid("dsw18 <= gew16 on the eta grid", 1e-9, v);
  }

  s.random("dsw18 vanishes 1e-4 above the entanglement-breaking threshold", 1e-3, std::min<std::size_t>(n, 50),
           [](Rng& rng, std::size_t) {
             const double nb = detail::uniform(rng, 0.01, 2);
             const auto ch = ChannelSpec::thermal(nb / (1 + nb) + 1e-4, nb);
             return dsw18_bound(ch, detail::uniform(rng, 0, 5));
           });

  s.random("thermal input maximizes the objective (5 channels x 100 inputs)", 1e-9, 5, [](Rng& rng, std::size_t) {
    const auto ch = detail::random_thermal_channel(rng);
    const double ns = detail::uniform(rng, 0.05, 2);
    const auto lta = build_dilation(decompose_loss_then_amp(ch));
    const auto atl = build_dilation(decompose_amp_then_loss(ch));
    const auto ref_lta = evaluate_objective(lta, ns);
    const auto ref_atl = evaluate_objective(atl, ns);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
      const auto input = detail::displaced_squeezed_thermal(rng, detail::uniform(rng, 0, ns));
      const auto a = evaluate_objective(lta, input);
      const auto b = evaluate_objective(atl, input);
      worst = std::max({worst, a.h_be - ref_lta.h_be, a.h_bf - ref_lta.h_bf, b.h_be - ref_atl.h_be, b.h_bf - ref_atl.h_bf});
    }
    return worst;
  });

  s.random("bounds nonnegative and pure loss below its infinite-energy limit", 1e-12, n, [](Rng& rng, std::size_t) {
    const auto ch = detail::random_thermal_channel(rng);
    const double ns = detail::uniform(rng, 0, 10);
    const double eta = detail::uniform(rng, 0, 0.999);
    const double lim = std::log2((1 + eta) / (1 - eta));
    return std::max({0.0, -dsw18_bound(ch, ns), -gew16_bound(ch, ns), -plob_bound(ch.eta, ch.nb).bits,
                     -pure_loss_bound(eta, ns), pure_loss_bound(eta, ns) - lim});
  });

  s.random("gew16 reduces to the pure-loss and pure-amplifier closed forms", 1e-9, n, [](Rng& rng, std::size_t) {
    const double ns = detail::uniform(rng, 0, 5);
    const double eta = detail::uniform(rng, 0.01, 0.99);
    const double gain = detail::uniform(rng, 1.01, 10);
    return std::max(std::abs(gew16_bound(ChannelSpec::thermal(eta, 0), ns) - pure_loss_bound(eta, ns)),
                    std::abs(gew16_bound(ChannelSpec::amplifier(gain, 0), ns) - pure_amp_bound(gain, ns)));
  });

  s.random("dsw18 at N_S = 1e6 matches the infinite-energy limit", 1e-3, std::min<std::size_t>(n, 20),
           [](Rng& rng, std::size_t) {
             const auto ch = detail::random_thermal_channel(rng);
             const auto d = decompose_amp_then_loss(ch);
             return std::abs(dsw18_bound(ch, 1e6) -
                             limit_bound(static_cast<double>(d.transmissivity), static_cast<double>(d.gain)));
           });
  return s.take();
}

inline Report broadcast_suite(const Options& opt) {
  using namespace broadcast;
  detail::SuiteBuilder s("broadcast", opt);
  const std::size_t n = opt.trials;

  const auto random_spec = [](Rng& rng) {
    const std::size_t m = 1 + detail::pick(rng, 4);
    std::vector<double> w(m + 1);
    for (auto& x : w) x = detail::uniform(rng, 0.05, 1);
    double total = 0;
    for (double x : w) total += x;
    std::vector<Receiver> rs;
    for (std::size_t i = 0; i < m; ++i) rs.push_back({"B" + std::to_string(i + 1), w[i] / total});
    return BroadcastSpec(std::move(rs));
  };

  s.random("cascade entropy difference equals the closed form", 1e-10, n, [&](Rng& rng, std::size_t) {
    const auto spec = random_spec(rng);
    const double ns = detail::uniform(rng, 0, 5);
    double worst = 0;
    for (std::uint32_t mask = 1; mask <= spec.full_mask(); ++mask)
      worst = std::max(worst, std::abs(broadcast_gaussian_check(spec, mask, ns) - broadcast_bound(spec, mask, ns)));
    return worst;
  });

  s.random("bound at N_S = 1e6 approaches the asymptotic limit", 1e-3, n, [&](Rng& rng, std::size_t) {
    const auto spec = random_spec(rng);
    double worst = 0;
    for (std::uint32_t mask = 1; mask <= spec.full_mask(); ++mask)
      worst = std::max(worst, std::abs(broadcast_bound(spec, mask, 1e6) - broadcast_bound_limit(spec, mask)));
    return worst;
  });

  s.random("moving a receiver from Eve into the subset never lowers the bound", 1e-12, n, [&](Rng& rng, std::size_t) {
    // B_new takes part of Eve's share and joins T; T-bar is unchanged.
    const auto spec = random_spec(rng);
    const double ns = detail::uniform(rng, 0, 5);
    const double take = spec.eve_eta() * detail::uniform(rng, 0, 1);
    auto rs = spec.receivers();
    rs.push_back({"new", take});
    const BroadcastSpec grown(rs);
    const auto mask = static_cast<std::uint32_t>(1 + detail::pick(rng, spec.full_mask()));
    const auto with_new = mask | (1u << spec.size());
    return std::max(0.0, broadcast_bound(spec, mask, ns) - broadcast_bound(grown, with_new, ns));
  });

  s.random("bounds nonnegative, zero at N_S = 0, nondecreasing in N_S", 1e-12, n, [&](Rng& rng, std::size_t) {
    const auto spec = random_spec(rng);
    double worst = 0;
    for (std::uint32_t mask = 1; mask <= spec.full_mask(); ++mask) {
      worst = std::max(worst, std::abs(broadcast_bound(spec, mask, 0)));
      double prev = 0;
      for (int i = 1; i <= 50; ++i) {
        const double b = broadcast_bound(spec, mask, 0.1 * i);
        worst = std::max({worst, -b, prev - b});
        prev = b;
      }
    }
    return worst;
  });

  // two receivers only; the mode count grows with m
  s.random("thermal input maximizes H(T E1) - H(E1) (2 receivers, 20 inputs)", 1e-9, std::min<std::size_t>(n, 50),
           [&](Rng& rng, std::size_t) {
             const double e1 = detail::uniform(rng, 0.05, 0.6);
             const double e2 = detail::uniform(rng, 0.05, 1 - e1);
             const BroadcastSpec spec({{"B", e1}, {"C", e2}});
             const double ns = detail::uniform(rng, 0.05, 3);
             double worst = 0;
             for (std::uint32_t mask = 1; mask <= 3; ++mask) {
               const double ref = broadcast_bound(spec, mask, ns);
               for (int k = 0; k < 20; ++k) {
                 const auto input = detail::displaced_squeezed_thermal(rng, detail::uniform(rng, 0, ns));
                 worst = std::max(worst, broadcast_objective(spec, mask, input) - ref);
               }
             }
             return worst;
           });
  return s.take();
}

inline Report findim_suite(const Options& opt) {
  using namespace findim;
  using detail::labels;
  detail::SuiteBuilder s("findim", opt);
  const std::size_t n = opt.trials;

  s.random("I(A;B|E) = H(B|E) + H(B|D) on pure ABED", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto psi = random_pure_state(rng, qubits({"A", "B", "E", "D"}));
    return std::abs(cqmi(psi, labels({"A"}), labels({"B"}), labels({"E"})) -
                    conditional_entropy(psi, labels({"B"}), labels({"E"})) -
                    conditional_entropy(psi, labels({"B"}), labels({"D"})));
  });

  s.random("I(A;B|C) = I(A;B|D) on pure ABCD", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto psi = random_pure_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}, {"D", 3}});
    return std::abs(cqmi(psi, labels({"A"}), labels({"B"}), labels({"C"})) -
                    cqmi(psi, labels({"A"}), labels({"B"}), labels({"D"})));
  });

  s.random("I(A';BB'|E'E'') <= H(B|E') + H(B|F') + I(A'A;B'|E'')", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto phi = random_pure_state(rng, qubits({"A", "A'", "B'", "E''"}));
    const CMatrix u = random_isometry(rng, 2, 8);
    const auto psi = apply_isometry(phi, u, labels({"A"}), qubits({"B", "E'", "F'"}));
    const double lhs = cqmi(psi, labels({"A'"}), labels({"B", "B'"}), labels({"E'", "E''"}));
    const double rhs = conditional_entropy(psi, labels({"B"}), labels({"E'"})) +
                       conditional_entropy(psi, labels({"B"}), labels({"F'"})) +
                       cqmi(phi, labels({"A'", "A"}), labels({"B'"}), labels({"E''"}));
    return std::max(0.0, lhs - rhs);
  });

  s.random("total correlation given E equals dual total correlation given F", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto psi = random_pure_state(rng, qubits({"A1", "A2", "A3", "E", "F"}));
    const std::vector<Labels> parts{{"A1"}, {"A2"}, {"A3"}};
    return std::abs(conditional_total_correlation(psi, parts, labels({"E"})) -
                    dual_total_correlation(psi, parts, labels({"F"})));
  });

  s.random("total + dual total correlation = sum_i I(A_i; rest | E)", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto rho = random_mixed_state(rng, qubits({"A1", "A2", "A3", "E"}));
    const std::vector<Labels> parts{{"A1"}, {"A2"}, {"A3"}};
    double sum = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Labels rest;
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (j != i) rest.insert(rest.end(), parts[j].begin(), parts[j].end());
      sum += cqmi(rho, parts[i], rest, labels({"E"}));
    }
    return std::abs(conditional_total_correlation(rho, parts, labels({"E"})) +
                    dual_total_correlation(rho, parts, labels({"E"})) - sum);
  });

  s.random("data processing of relative entropy", 1e-9, n, [](Rng& rng, std::size_t) {
    const Layout in{{"X", 3}};
    const auto rho = random_mixed_state(rng, in);
    const auto sigma = random_mixed_state(rng, in);
    const auto kraus = random_kraus(rng, 3, 2, 1 + detail::pick(rng, 4) + 1);
    const Layout out{{"Y", 2}};
    const double before = relative_entropy(rho, sigma);
    const double after = relative_entropy(apply_kraus(rho, kraus, labels({"X"}), out),
                                          apply_kraus(sigma, kraus, labels({"X"}), out));
    return std::max(0.0, after - before);
  });

  s.random("I(A;B) <= 2 min(H(A), H(B))", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto rho = random_mixed_state(rng, {{"A", 2}, {"B", 3}});
    const double i = mutual_information(rho, labels({"A"}), labels({"B"}));
    return std::max(0.0, i - 2 * std::min(entropy(rho, labels({"A"})), entropy(rho, labels({"B"}))));
  });

  s.random("H(AB|CD) <= H(A|C) + H(B|D)", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto rho = random_mixed_state(rng, qubits({"A", "B", "C", "D"}));
    const double lhs = conditional_entropy(rho, labels({"A", "B"}), labels({"C", "D"}));
    const double rhs = conditional_entropy(rho, labels({"A"}), labels({"C"})) +
                       conditional_entropy(rho, labels({"B"}), labels({"D"}));
    return std::max(0.0, lhs - rhs);
  });

  s.random("grouping parts never increases the trivial-extension bound", 1e-9, n, [](Rng& rng, std::size_t) {
    const auto rho = random_mixed_state(rng, qubits({"A1", "A2", "A3"}));
    const double fine = esq_trivial_extension(rho, {{"A1"}, {"A2"}, {"A3"}});
    const double grouped = esq_trivial_extension(rho, {{"A1", "A2"}, {"A3"}});
    const double bipartite = esq_upper(rho, labels({"A1", "A2"}), labels({"A3"})).bits;
    return std::max({0.0, grouped - fine, bipartite - fine});
  });

  s.random("private states: key statistics exact and trivial-extension bound >= log2 K", 1e-9,
           std::min<std::size_t>(n, 50), [](Rng& rng, std::size_t) {
             const auto shield = random_mixed_state(rng, qubits({"A'", "B'"}));
             std::vector<CMatrix> blocks;
             for (int i = 0; i < 4; ++i) blocks.push_back(random_unitary(rng, 4));
             const auto gamma = private_state(2, shield, blocks);
             const auto audit = key_audit(gamma, 2);
             const double half = 0.5 * mutual_information(gamma, labels({"A", "A'"}), labels({"B", "B'"}));
             return std::max({audit.distribution_error, audit.eve_dependence, 1.0 - half});
           });

  {
    std::vector<double> v;
    for (std::size_t m = 2; m <= 4; ++m)
      for (std::size_t k = 2; k <= 4; ++k) {
        if (m == 4 && k == 4) continue;  // keep total dimension <= 256
        const auto ghz = ghz_state(m, k);
        std::vector<Labels> parts;
        for (std::size_t i = 1; i <= m; ++i) parts.push_back({"A" + std::to_string(i)});
        v.push_back(std::abs(esq_trivial_extension(ghz, parts) - 0.5 * static_cast<double>(m) * std::log2(static_cast<double>(k))));
      }
    s.grid("GHZ trivial-extension bound equals (m/2) log2 K", 1e-9, v);
  }
  return s.take();
}

inline Report run_suite(const std::string& name, const Options& opt) {
  if (name == "gaussian") return gaussian_suite(opt);
  if (name == "bounds") return bounds_suite(opt);
  if (name == "findim") return findim_suite(opt);
  if (name == "broadcast") return broadcast_suite(opt);
  fail(ErrorCode::invalid_argument, "unknown suite '" + name + "'");
}

}  // namespace bb::verify
