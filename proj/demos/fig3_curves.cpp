// Key-rate upper bounds for a thermal channel with N_B = 1 and N_S = 0.1,
// eta from the entanglement-breaking edge up to 0.995.
#include <cstdio>

#include "bb/bounds.hpp"

int main() {
  using namespace bb::bounds;
  const double nb = 1, ns = 0.1;
  std::printf("%-7s %-12s %-12s %-12s\n", "eta", "dsw18", "gew16", "plob");
  for (int i = 0; i < 100; i += 5) {
    const double eta = 0.5 + 0.005 * i + (i == 0 ? 1e-4 : 0);
    const auto ch = ChannelSpec::thermal(eta, nb);
    const double d = is_entanglement_breaking(ch) ? 0 : dsw18_bound(ch, ns);
    std::printf("%-7.4f %-12.6g %-12.6g %-12.6g\n", eta, d, gew16_bound(ch, ns), plob_bound(eta, nb).bits);
  }

  // high-energy end: the bound saturates at the closed-form limit
  const auto ch = ChannelSpec::thermal(0.9, nb);
  const auto dec = decompose_amp_then_loss(ch);
  std::printf("\neta=0.9: dsw18(N_S=1e6) = %.6f, limit = %.6f\n", dsw18_bound(ch, 1e6),
              limit_bound(static_cast<double>(dec.transmissivity), static_cast<double>(dec.gain)));
}
