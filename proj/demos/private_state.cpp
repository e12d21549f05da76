// A random twisted private state (one key bit, qubit shields) and
// squashed-entanglement upper bounds for it, a Bell pair and GHZ states.
#include <cmath>
#include <cstdio>

#include "bb/findim.hpp"

int main() {
  using namespace bb::findim;
  Rng rng(2024);

  const auto shield = random_mixed_state(rng, {{"SA", 2}, {"SB", 2}});
  const auto id = CMatrix::Identity(4, 4);
  const auto gamma = private_state(2, shield, {id, id, id, random_unitary(rng, 4)});
  const auto audit = key_audit(gamma, 2);
  std::printf("private state: key distribution error %.2e, Eve dependence %.2e\n", audit.distribution_error,
              audit.eve_dependence);

  std::vector<SquashingChannel> cands{SquashingChannel::discard(4)};
  for (int i = 0; i < 3; ++i) cands.emplace_back(random_kraus(rng, 4, 2, 2));
  EsqOptions opt;
  opt.restarts = 2;
  opt.max_evaluations = 1500;
  const auto r = esq_upper(gamma, {"A", "SA"}, {"B", "SB"}, cands, opt);
  std::printf("  E_sq <= %.6f bits (identity squasher %.6f, %s); key bits = 1\n", r.bits, r.trivial_bits,
              r.from_search ? "found by search" : r.best_candidate ? "from a candidate" : "identity");

  const auto bell = esq_upper(to_density(bell_state()), {"A1"}, {"A2"});
  std::printf("Bell pair: E_sq <= %.6f\n", bell.bits);

  for (std::size_t m = 2; m <= 4; ++m) {
    const auto ghz = ghz_state(m, 2);
    std::vector<Labels> parts;
    for (std::size_t i = 1; i <= m; ++i) parts.push_back({"A" + std::to_string(i)});
    std::printf("GHZ(m=%zu): half total correlation %.6f, dual %.6f\n", m, esq_trivial_extension(ghz, parts),
                0.5 * dual_total_correlation(ghz, parts));
  }
}
