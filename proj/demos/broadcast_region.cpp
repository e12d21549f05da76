// Rate-sum bounds for all receiver coalitions of a three-receiver pure-loss broadcast.
#include <cstdio>

#include "bb/broadcast.hpp"

int main() {
  using namespace bb::broadcast;
  const BroadcastSpec spec({{"B", 0.2}, {"C", 0.3}, {"D", 0.1}});
  std::printf("Eve keeps %.2f of the signal\n\n", static_cast<double>(spec.eve_eta()));
  for (double ns : {0.1, 1.0, 10.0}) {
    std::printf("N_S = %g\n", ns);
    for (const auto& e : broadcast_region(spec, ns))
      std::printf("  %-7s %.6f bits  (Gaussian check %.6f, N_S->inf %.6f)\n", e.subset.c_str(), e.bound_bits,
                  broadcast_gaussian_check(spec, e.mask, ns), broadcast_bound_limit(spec, e.mask));
  }
}
