#include "catch_amalgamated.hpp"

#include <cmath>
#include <functional>

#include "bb/findim.hpp"

using namespace bb;
using namespace bb::findim;
using Catch::Matchers::WithinAbs;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected bb::Error");
  return ErrorCode::numerical;
}

DensityOperator ket(std::initializer_list<Complex> amps, const std::string& label = "A") {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  v /= v.norm();
  return to_density(PureStateVector(v, {{label, amps.size()}}));
}

DensityOperator maximally_mixed(std::size_t d, const std::string& label = "A") {
  const auto n = static_cast<Eigen::Index>(d);
  return DensityOperator(CMatrix::Identity(n, n) / static_cast<double>(d), {{label, d}});
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("layouts and tensor ordering") {
  const auto a = ket({1, 0}, "A");
  const auto b = ket({0, 1}, "B");
  const auto ab = tensor(a, b);
  CHECK(ab.systems().size() == 2);
  // |0>|1> sits at index 0 * 2 + 1
  CHECK(std::abs(ab.matrix()(1, 1) - Complex(1, 0)) < 1e-15);
  CHECK(code_of([&] { tensor(a, a); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { validate_layout({{"A", 2}, {"A", 3}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { validate_layout({{"A", 0}}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("partial trace") {
  const auto bell = bell_state();
  const auto a = partial_trace(bell, Labels{"A1"});
  CHECK(max_abs(a.matrix() - maximally_mixed(2).matrix()) < 1e-15);

  const auto prod = tensor(ket({1, 0}, "A"), ket({1, 1}, "B"));
  CHECK(max_abs(partial_trace(prod, Labels{"B"}).matrix() - ket({1, 1}, "B").matrix()) < 1e-15);

  // keep order is respected
  Rng rng(3);
  const auto rho = random_mixed_state(rng, {{"A", 2}, {"B", 3}});
  const auto ba = partial_trace(rho, Labels{"B", "A"});
  CHECK(ba.systems()[0].label == "B");
  CMatrix swap = CMatrix::Zero(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) swap(j * 2 + i, i * 3 + j) = 1;
  CHECK(max_abs(ba.matrix() - swap * rho.matrix() * swap.adjoint()) < 1e-15);

  // pure-state and density routes agree
  const auto psi = random_pure_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
  for (const Labels& keep : {Labels{"A"}, Labels{"C", "A"}, Labels{"B"}, Labels{"A", "B", "C"}})
    CHECK(max_abs(partial_trace(psi, keep).matrix() - partial_trace(to_density(psi), keep).matrix()) < 1e-14);

  CHECK(code_of([&] { partial_trace(rho, Labels{"Z"}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { partial_trace(rho, Labels{"A", "A"}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("purification round trip") {
  Rng rng(5);
  const CMatrix g = gaussian_matrix(rng, 4, 3);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  const DensityOperator rho(m, {{"A", 4}});
  const auto psi = purify(rho);
  CHECK(psi.systems().back().label == "R");
  CHECK(psi.systems().back().dim == 3);
  CHECK(max_abs(partial_trace(psi, Labels{"A"}).matrix() - m) < 1e-12);
  CHECK_THAT(entropy(psi, Labels{"R"}), WithinAbs(entropy(rho), 1e-12));
  CHECK(code_of([&] { purify(rho, "A"); }) == ErrorCode::invalid_argument);
}

TEST_CASE("state validation") {
  CMatrix bad(2, 2);
  bad << 0.5, 0.3, 0.1, 0.5;
  CHECK(code_of([&] { DensityOperator(bad, {{"A", 2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { DensityOperator(CMatrix::Identity(2, 2), {{"A", 2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { DensityOperator(CMatrix::Identity(3, 3) / 3.0, {{"A", 2}}); }) == ErrorCode::invalid_argument);
  CMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_NOTHROW(DensityOperator(neg, {{"A", 2}}));
  CHECK(code_of([&] { DensityOperator::checked(neg, {{"A", 2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { PureStateVector(CVector::Ones(2), {{"A", 2}}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("entropies and distances") {
  CHECK_THAT(entropy(maximally_mixed(2)), WithinAbs(1, 1e-15));
  CHECK_THAT(entropy(maximally_mixed(6)), WithinAbs(std::log2(6.0), 1e-14));
  CHECK_THAT(entropy(ket({1, 1})), WithinAbs(0, 1e-14));

  const auto zero = ket({1, 0}), one = ket({0, 1}), plus = ket({1, 1});
  CHECK_THAT(fidelity(zero, plus), WithinAbs(0.5, 1e-14));
  CHECK_THAT(fidelity(zero, one), WithinAbs(0, 1e-14));
  CHECK_THAT(fidelity(plus, plus), WithinAbs(1, 1e-14));
  CHECK_THAT(trace_distance(zero, one), WithinAbs(2, 1e-15));
  CHECK_THAT(trace_distance(zero, plus), WithinAbs(std::sqrt(2.0), 1e-14));

  CHECK(std::isinf(relative_entropy(zero, one)));
  CHECK_THAT(relative_entropy(plus, maximally_mixed(2)), WithinAbs(1, 1e-14));
  CHECK_THAT(relative_entropy(plus, plus), WithinAbs(0, 1e-12));

  // Fuchs-van de Graaf on random pairs
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto r = random_mixed_state(rng, {{"A", 3}});
    const auto s = random_mixed_state(rng, {{"A", 3}});
    const double f = fidelity(r, s), td = trace_distance(r, s) / 2;
    CHECK(1 - std::sqrt(f) <= td + 1e-12);
    CHECK(td <= std::sqrt(1 - f) + 1e-12);
  }
  CHECK(code_of([&] { fidelity(zero, maximally_mixed(3)); }) == ErrorCode::invalid_argument);
}

TEST_CASE("mutual and conditional information") {
  const auto bell = bell_state();
  CHECK_THAT(mutual_information(bell, {"A1"}, {"A2"}), WithinAbs(2, 1e-14));
  CHECK_THAT(conditional_entropy(bell, {"A1"}, {"A2"}), WithinAbs(-1, 1e-14));

  const auto ghz = ghz_state(3, 2);
  CHECK_THAT(cqmi(ghz, {"A1"}, {"A2"}, {"A3"}), WithinAbs(1, 1e-14));
  CHECK_THAT(cqmi(ghz, {"A1"}, {"A2"}), WithinAbs(1, 1e-14));
  CHECK_THAT(cqmi(to_density(ghz), {"A1"}, {"A2", "A3"}), WithinAbs(2, 1e-13));

  // chain rule I(A;BC|D) = I(A;B|D) + I(A;C|BD) on a random state
  Rng rng(21);
  const auto rho = random_mixed_state(rng, qubits({"A", "B", "C", "D"}));
  CHECK_THAT(cqmi(rho, {"A"}, {"B", "C"}, {"D"}),
             WithinAbs(cqmi(rho, {"A"}, {"B"}, {"D"}) + cqmi(rho, {"A"}, {"C"}, {"B", "D"}), 1e-12));
  CHECK(cqmi(rho, {"A"}, {"B"}, {"C"}) >= -1e-12);

  CHECK(code_of([&] { cqmi(rho, {"A"}, {"A"}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { mutual_information(rho, {}, {"A"}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("multipartite correlations") {
  // GHZ(3,2): 1 + 2 in both orderings
  const auto ghz = ghz_state(3, 2);
  const std::vector<Labels> parts{{"A1"}, {"A2"}, {"A3"}};
  CHECK_THAT(conditional_total_correlation(ghz, parts), WithinAbs(3, 1e-13));
  CHECK_THAT(dual_total_correlation(ghz, parts), WithinAbs(3, 1e-13));
  CHECK_THAT(esq_trivial_extension(ghz, parts), WithinAbs(1.5, 1e-13));

  // total correlation equals sum H(A_i) - H(all), hence permutation invariant
  Rng rng(8);
  const auto rho = random_mixed_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}, {"E", 2}});
  const double tc = conditional_total_correlation(rho, {{"A"}, {"B"}, {"C"}}, {"E"});
  CHECK_THAT(conditional_total_correlation(rho, {{"C"}, {"A"}, {"B"}}, {"E"}), WithinAbs(tc, 1e-12));
  CHECK_THAT(dual_total_correlation(rho, {{"B"}, {"C"}, {"A"}}, {"E"}),
             WithinAbs(dual_total_correlation(rho, {{"A"}, {"B"}, {"C"}}, {"E"}), 1e-12));
  const double direct = entropy(rho, {"A", "E"}) + entropy(rho, {"B", "E"}) + entropy(rho, {"C", "E"}) -
                        entropy(rho, {"A", "B", "C", "E"}) - 2 * entropy(rho, {"E"});
  CHECK_THAT(tc, WithinAbs(direct, 1e-12));

  CHECK(code_of([&] { conditional_total_correlation(rho, {{"A"}}, {}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { dual_total_correlation(rho, {{"A"}, {"A", "B"}}, {}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("random ensembles") {
  Rng rng(13);
  const auto v = random_isometry(rng, 3, 7);
  CHECK(isometry_defect(v) < 1e-13);
  CHECK(isometry_defect(random_unitary(rng, 5)) < 1e-13);
  const auto k = random_kraus(rng, 4, 2, 3);
  CMatrix sum = CMatrix::Zero(4, 4);
  for (const auto& op : k) sum += op.adjoint() * op;
  CHECK(max_abs(sum - CMatrix::Identity(4, 4)) < 1e-13);

  const auto psi = random_pure_state(rng, {{"A", 3}, {"B", 4}});
  CHECK_THAT(entropy(psi, {"A"}), WithinAbs(entropy(psi, {"B"}), 1e-12));
  const auto rho = random_mixed_state(rng, {{"A", 4}});
  CHECK_NOTHROW(DensityOperator::checked(rho.matrix(), rho.systems()));

  Rng again(13);
  CHECK(max_abs(random_isometry(again, 3, 7) - v) == 0);
  CHECK(code_of([&] { random_isometry(rng, 4, 3); }) == ErrorCode::invalid_argument);
}

TEST_CASE("channels: Stinespring and Kraus agree") {
  const double p = 0.3;
  CMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const std::vector<CMatrix> kraus{std::sqrt(1 - 3 * p / 4) * CMatrix::Identity(2, 2), std::sqrt(p / 4) * x,
                                   std::sqrt(p / 4) * y, std::sqrt(p / 4) * z};
  // V = sum_k K_k (x) |k>_Env, output index b * 4 + k
  CMatrix v = CMatrix::Zero(8, 2);
  for (int kk = 0; kk < 4; ++kk)
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a) v(b * 4 + kk, a) = kraus[static_cast<std::size_t>(kk)](b, a);

  const auto bell = to_density(bell_state());
  const auto via_kraus = apply_kraus(bell, kraus, {"A2"}, {{"B", 2}});
  const auto dilated = apply_isometry(bell, v, {"A2"}, {{"B", 2}, {"Env", 4}});
  CHECK(via_kraus.systems()[0].label == "A1");
  CHECK(max_abs(partial_trace(dilated, Labels{"A1", "B"}).matrix() - via_kraus.matrix()) < 1e-14);

  const auto pure = apply_isometry(bell_state(), v, {"A2"}, {{"B", 2}, {"Env", 4}});
  CHECK(max_abs(to_density(pure).matrix() - dilated.matrix()) < 1e-14);
  // complementary output: H(Env) = H(A1 B)
  CHECK_THAT(entropy(pure, {"Env"}), WithinAbs(entropy(via_kraus), 1e-12));

  CHECK(code_of([&] { apply_isometry(bell, 2.0 * CMatrix::Identity(2, 2), {"A2"}, {{"B", 2}}); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { apply_kraus(bell, {0.5 * x}, {"A2"}, {{"B", 2}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { apply_kraus(bell, kraus, {"A2"}, {{"B", 3}}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("continuity gap") {
  CHECK_THAT(continuity_gap(0.5, 2, 2), WithinAbs(3, 1e-14));
  CHECK(continuity_gap(0, 4, 8) == 0);
  CHECK_THAT(continuity_gap(0.5, 4, 8), WithinAbs(4, 1e-14));
  CHECK(code_of([] { continuity_gap(1.5, 2, 2); }) == ErrorCode::invalid_argument);

  // |I(A;B)_rho - I(A;B)_sigma| stays inside the gap for nearby states
  Rng rng(17);
  const auto rho = random_mixed_state(rng, qubits({"A", "B"}));
  const auto noise = random_mixed_state(rng, qubits({"A", "B"}));
  const DensityOperator sigma(0.97 * rho.matrix() + 0.03 * noise.matrix(), rho.systems());
  const double diff = std::abs(mutual_information(rho, {"A"}, {"B"}) - mutual_information(sigma, {"A"}, {"B"}));
  CHECK(diff <= continuity_gap(rho, sigma, {"A"}, {"B"}));
}

TEST_CASE("private states") {
  Rng rng(31);
  const auto shield = random_mixed_state(rng, {{"SA", 2}, {"SB", 2}});
  const auto ident = CMatrix::Identity(4, 4);

  // trivial twisting gives Phi_2 (x) sigma
  const auto plain = private_state(2, shield, {ident, ident, ident, ident});
  const auto phi = to_density(PureStateVector(bell_state().amplitudes(), {{"A", 2}, {"B", 2}}));
  CHECK(max_abs(plain.matrix() - tensor(phi, shield).matrix()) < 1e-15);

  const auto u = random_unitary(rng, 4);
  const auto gamma = private_state(2, shield, {ident, random_unitary(rng, 4), random_unitary(rng, 4), u});
  CHECK_NOTHROW(DensityOperator::checked(gamma.matrix(), gamma.systems()));
  // off-diagonal blocks never enter
  CHECK(max_abs(gamma.matrix() - private_state(2, shield, {ident, ident, ident, u}).matrix()) < 1e-15);

  const auto audit = key_audit(gamma, 2);
  CHECK(audit.distribution_error < 1e-12);
  CHECK(audit.eve_dependence < 1e-10);

  CHECK(code_of([&] { private_state(2, shield, {ident, ident, ident}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { private_state(2, shield, {ident, ident, ident, 2.0 * ident}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("squashed entanglement upper bounds") {
  // Bell state: the extension is trivial
  const auto bell = to_density(bell_state());
  const auto r = esq_upper(bell, {"A1"}, {"A2"});
  CHECK(r.extension_dim == 1);
  CHECK_THAT(r.bits, WithinAbs(1, 1e-12));

  // classically correlated: the identity squasher leaves 1/2, dephasing E removes it
  CMatrix cc = CMatrix::Zero(4, 4);
  cc(0, 0) = cc(3, 3) = 0.5;
  const DensityOperator classical(cc, qubits({"A", "B"}));
  CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = p1(1, 1) = 1;
  const auto dephase = SquashingChannel({p0, p1});
  const auto rc = esq_upper(classical, {"A"}, {"B"}, {dephase});
  CHECK_THAT(rc.trivial_bits, WithinAbs(0.5, 1e-12));
  CHECK_THAT(rc.bits, WithinAbs(0, 1e-12));
  CHECK(rc.best_candidate == std::optional<std::size_t>{0});
  CHECK(code_of([&] { esq_upper(classical, {"A"}, {"B"}, {SquashingChannel::identity(3)}); }) ==
        ErrorCode::invalid_argument);

  // private state with K = 2: no squasher can push below one bit
  Rng rng(41);
  const auto shield = random_mixed_state(rng, {{"SA", 2}, {"SB", 2}});
  const auto ident = CMatrix::Identity(4, 4);
  const auto gamma = private_state(2, shield, {ident, ident, ident, random_unitary(rng, 4)});
  std::vector<SquashingChannel> cands{SquashingChannel::discard(4), SquashingChannel::identity(4)};
  for (int i = 0; i < 4; ++i) cands.emplace_back(random_kraus(rng, 4, 2, 2));
  EsqOptions opt;
  opt.restarts = 1;
  opt.max_evaluations = 300;
  opt.seed = 2;
  const auto rp = esq_upper(gamma, {"A", "SA"}, {"B", "SB"}, cands, opt);
  CHECK(rp.extension_dim == 4);
  CHECK(rp.bits >= 1 - 1e-10);
  CHECK(rp.bits <= rp.trivial_bits);
}
