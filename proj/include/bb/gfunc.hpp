#pragma once

#include <cmath>
#include <concepts>
#include <numbers>

#include "bb/error.hpp"

namespace bb {

// Entropy in bits of a single-mode thermal state with mean photon number x:
//   g(x) = (1+x) log2(1+x) - x log2(x),  g(0) = 0.
// Small arguments go through log1p so the (1+x) term keeps full precision.
template <std::floating_point Real>
Real g(Real x) {
  using std::log1p;
  using std::log2;
  if (!(x >= Real(0))) fail(ErrorCode::invalid_argument, "g: argument must be >= 0");
  if (x < Real(1e-15)) return Real(0);
  if (x < Real(0.5)) {
    const Real ln2 = std::numbers::ln2_v<Real>;
    return (Real(1) + x) * log1p(x) / ln2 - x * log2(x);
  }
  return (Real(1) + x) * log2(Real(1) + x) - x * log2(x);
}

}  // namespace bb
