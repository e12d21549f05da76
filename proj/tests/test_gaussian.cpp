#include "catch_amalgamated.hpp"

#include <cmath>
#include <functional>
#include <random>

#include "bb/gaussian.hpp"
#include "bb/gfunc.hpp"

using namespace bb;
using namespace bb::gaussian;
using Catch::Matchers::WithinAbs;

namespace {

double d(Real x) { return static_cast<double>(x); }

double max_abs(const Matrix& m) { return d(m.cwiseAbs().maxCoeff()); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bb::Error");
  return ErrorCode::numerical;
}

}  // namespace

TEST_CASE("g anchors and reference values") {
  CHECK(g(0.0) == 0.0);
  CHECK(g(1.0) == 2.0);
  CHECK(g(0.0L) == 0.0L);
  CHECK(g(1.0L) == 2.0L);
  // mpmath, 50 digits
  CHECK_THAT(g(0.075), WithinAbs(0.39243432886330621, 1e-15));
  CHECK_THAT(g(2.0) - g(1.0), WithinAbs(0.75488750216346854, 1e-15));
  CHECK(code_of([] { g(-1e-3); }) == ErrorCode::invalid_argument);
}

TEST_CASE("vacuum and thermal states") {
  const auto v1 = vacuum_state(1);
  CHECK(max_abs(v1.cov() - Matrix::Identity(2, 2)) == 0);
  CHECK(d(mean_photon_number(v1, 0)) == 0);
  REQUIRE(symplectic_eigenvalues(v1).size() == 1);
  CHECK_THAT(d(symplectic_eigenvalues(v1)[0]), WithinAbs(1, 1e-15));
  CHECK(max_abs(vacuum_state(3).cov() - Matrix::Identity(6, 6)) == 0);
  CHECK(code_of([] { vacuum_state(std::size_t{0}); }) == ErrorCode::invalid_argument);

  CHECK(max_abs(thermal_state(0).cov() - Matrix::Identity(2, 2)) == 0);
  const auto t1 = thermal_state(1);
  CHECK_THAT(d(symplectic_eigenvalues(t1).at(0)), WithinAbs(3, 1e-15));
  CHECK_THAT(d(entropy(t1)), WithinAbs(2, 1e-15));
  CHECK_THAT(d(mean_photon_number(thermal_state(0.1L), 0)), WithinAbs(0.1, 1e-15));
  CHECK(code_of([] { thermal_state(-0.1L); }) == ErrorCode::invalid_argument);
}

TEST_CASE("unphysical covariance matrices are rejected") {
  CHECK(code_of([] { GaussianState(Vector::Zero(2), 0.5L * Matrix::Identity(2, 2)); }) == ErrorCode::invalid_argument);
  Matrix squeezed_ok(2, 2);
  squeezed_ok << 4, 0, 0, 0.25L;
  CHECK_NOTHROW(GaussianState(Vector::Zero(2), squeezed_ok));
  CHECK(code_of([] { GaussianState(Vector::Zero(3), Matrix::Identity(2, 2)); }) == ErrorCode::invalid_argument);
}

TEST_CASE("beamsplitter") {
  CHECK(max_abs(beamsplitter(1).matrix() - Matrix::Identity(4, 4)) == 0);

  // t = 0: b = e, e' = -a
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 2) = swap(1, 3) = 1;
  swap(2, 0) = swap(3, 1) = -1;
  CHECK(max_abs(beamsplitter(0).matrix() - swap) == 0);

  const auto out = apply(beamsplitter(0.5L), tensor(thermal_state(1, "a"), vacuum_state({"e"})), ModeList{0, 1});
  CHECK_THAT(d(mean_photon_number(out, 0)), WithinAbs(0.5, 1e-15));
  CHECK_THAT(d(mean_photon_number(out, 1)), WithinAbs(0.5, 1e-15));

  CHECK(code_of([] { beamsplitter(1.5L); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { beamsplitter(-0.1L); }) == ErrorCode::invalid_argument);
  CHECK(d(beamsplitter(0.3L).symplectic_defect()) < 1e-15);
}

TEST_CASE("two-mode squeezer") {
  CHECK(max_abs(two_mode_squeezer(1).matrix() - Matrix::Identity(4, 4)) == 0);
  const auto tmsv = apply(two_mode_squeezer(2), vacuum_state(2), ModeList{0, 1});
  const auto a = reduce(tmsv, ModeList{0});
  CHECK(max_abs(a.cov() - 3 * Matrix::Identity(2, 2)) < 1e-15);
  CHECK_THAT(d(entropy(a)), WithinAbs(2, 1e-14));
  for (Real nu : symplectic_eigenvalues(tmsv)) CHECK_THAT(d(nu), WithinAbs(1, 1e-12));
  CHECK_THAT(d(entropy(tmsv)), WithinAbs(0, 1e-12));
  CHECK_THAT(d(conditional_entropy(tmsv, ModeList{0}, ModeList{1})), WithinAbs(-2, 1e-12));
  CHECK(code_of([] { two_mode_squeezer(0.5L); }) == ErrorCode::invalid_argument);
}

TEST_CASE("single-mode squeezer and displacement") {
  CHECK(max_abs(single_mode_squeezer(0).matrix() - Matrix::Identity(2, 2)) == 0);
  for (Real r : {0.1L, 0.7L, -1.3L}) {
    const auto s = single_mode_squeezer(r);
    CHECK_THAT(d(s.matrix().determinant()), WithinAbs(1, 1e-15));
    const auto sq = apply(s, vacuum_state(1), ModeList{0});
    CHECK_THAT(d(mean_photon_number(sq, 0)), WithinAbs(std::pow(std::sinh(d(r)), 2), 1e-14));
  }
  CHECK(code_of([] { single_mode_squeezer(std::numeric_limits<Real>::infinity()); }) == ErrorCode::invalid_argument);

  const auto t = thermal_state(0.4L);
  CHECK(max_abs(displace(t, 0, 0, 0).cov() - t.cov()) == 0);
  // quadratures are (2 Re alpha, 2 Im alpha) when the vacuum covariance is I
  CHECK_THAT(d(mean_photon_number(displace(vacuum_state(1), 0, 2, 0), 0)), WithinAbs(1, 1e-15));
  CHECK_THAT(d(mean_photon_number(displace(vacuum_state(1), 0, 1, 1), 0)), WithinAbs(0.5, 1e-15));
  CHECK(d(entropy(displace(t, 0, 3, -1))) == d(entropy(t)));
  CHECK(code_of([&] { displace(t, 1, 0, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("apply: arity, repeated modes, inverse") {
  const auto s = tensor(thermal_state(1, "a"), thermal_state(2, "b"));
  CHECK(code_of([&] { apply(beamsplitter(0.5L), s, ModeList{0}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { apply(beamsplitter(0.5L), s, ModeList{0, 0}); }) == ErrorCode::invalid_argument);
  CHECK(max_abs(apply(beamsplitter(1), s, ModeList{0, 1}).cov() - s.cov()) == 0);

  // BS(1/2) followed by BS(1/2) with the modes exchanged undoes it
  const auto once = apply(beamsplitter(0.5L), displace(s, 0, 1, -2), ModeList{0, 1});
  const auto back = apply(beamsplitter(0.5L), once, ModeList{1, 0});
  CHECK(max_abs(back.cov() - s.cov()) < 1e-15);
  CHECK_THAT(d(back.mean()(0)), WithinAbs(1, 1e-15));
  CHECK_THAT(d(back.mean()(1)), WithinAbs(-2, 1e-15));

  CHECK_THAT(d(entropy(once)), WithinAbs(d(entropy(s)), 1e-13));
  CHECK(apply(beamsplitter(0.3L), s, std::vector<std::string>{"b", "a"}).labels() == s.labels());
}

TEST_CASE("tensor and reduce") {
  CHECK(max_abs(tensor(vacuum_state({"x"}), vacuum_state({"y"})).cov() - vacuum_state(2).cov()) == 0);
  const auto a = thermal_state(1, "a"), b = thermal_state(2, "b");
  const auto ab = tensor(a, b);
  CHECK_THAT(d(entropy(ab)), WithinAbs(d(entropy(a) + entropy(b)), 1e-14));
  CHECK_THAT(d(mean_photon_number(ab, 0)), WithinAbs(1, 1e-15));
  CHECK_THAT(d(mean_photon_number(ab, 1)), WithinAbs(2, 1e-15));
  CHECK(code_of([&] { tensor(a, a); }) == ErrorCode::invalid_argument);

  CHECK(max_abs(reduce(ab, all_modes(ab)).cov() - ab.cov()) == 0);
  CHECK(max_abs(reduce(ab, std::vector<std::string>{"b"}).cov() - b.cov()) == 0);
  CHECK(reduce(ab, ModeList{1, 0}).labels() == std::vector<std::string>{"b", "a"});
  CHECK(code_of([&] { reduce(ab, ModeList{}); }) == ErrorCode::invalid_argument);

  CHECK_THAT(d(conditional_entropy(ab, ModeList{0}, ModeList{1})), WithinAbs(2, 1e-14));
  CHECK(code_of([&] { conditional_entropy(ab, ModeList{0}, ModeList{0}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("symplectic spectrum of a random pure three-mode state") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  auto s = vacuum_state(3);
  for (int k = 0; k < 8; ++k) {
    s = apply(two_mode_squeezer(1 + 2 * u(rng)), s, ModeList{static_cast<std::size_t>(k % 3), static_cast<std::size_t>((k + 1) % 3)});
    s = apply(single_mode_squeezer(u(rng) - 0.5), s, ModeList{static_cast<std::size_t>(k % 3)});
    s = apply(phase_rotation(6 * u(rng)), s, ModeList{static_cast<std::size_t>((k + 2) % 3)});
  }
  for (Real nu : symplectic_eigenvalues(s)) {
    CHECK(nu >= 1);
    CHECK(d(nu) - 1 < 1e-9);
  }
  // H(A|B) = -H(A|C) on a pure global state
  CHECK_THAT(d(conditional_entropy(s, ModeList{0}, ModeList{1}) + conditional_entropy(s, ModeList{0}, ModeList{2})),
             WithinAbs(0, 1e-9));
}

TEST_CASE("high-gain spectra stay above the clamp") {
  // near-pure two-mode squeezed states at large gain stress the spectrum solver
  for (Real gain : {10.0L, 100.0L, 2500.0L}) {
    const auto s = apply(two_mode_squeezer(gain), vacuum_state(2), ModeList{0, 1});
    for (Real nu : symplectic_eigenvalues(s)) CHECK(std::abs(d(nu) - 1) < 1e-9);
    CHECK_THAT(d(entropy(s, ModeList{0})), WithinAbs(g(static_cast<double>(gain) - 1), 1e-9));
  }
}
