#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "xizeros/profiles.hpp"

using namespace xizeros;

namespace {

// deterministic complex sequences for property tests
std::vector<CoefficientSequence> random_sequences(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> len(1, 6);
  std::vector<CoefficientSequence> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<cxd> c(len(rng));
    for (cxd& a : c) a = cxd(u(rng), u(rng));
    bool any = false;
    for (const cxd& a : c) any = any || a != cxd(0.0, 0.0);
    if (any) out.push_back(CoefficientSequence(std::move(c)));
  }
  return out;
}

}  // namespace

TEST_CASE("eval_phi examples", "[profiles]") {
  // t = 0, K = 10: e^{-2 pi} prod (1 - e^{-2 pi k})^{24}; term-by-term oracle at K = 20
  const double v10 = eval_phi(0.0, 10);
  const double oracle20 = static_cast<double>(oracles::phi_product(0.0L, 20));
  CHECK(std::abs(v10 - oracle20) < 1e-12 * oracle20 + 1e-300);

  double direct = std::exp(-kTwoPi);
  for (int k = 1; k <= 10; ++k) direct *= std::pow(1.0 - std::exp(-kTwoPi * k), 24.0);
  CHECK(v10 == Catch::Approx(direct).epsilon(1e-12));

  CHECK(eval_phi(1.0, 12) == eval_phi(-1.0, 12));  // phi is even
  CHECK(eval_phi(6.0, 12) == 0.0);                 // e^{-2 pi cosh 6} underflows
  CHECK(phi_truncation_tail(0.0, 12) < 1e-30);
  CHECK(phi_truncation_tail(3.0, 12) > phi_truncation_tail(2.0, 12));  // monotone in |t|
}

TEST_CASE("eval_phi_F examples", "[profiles]") {
  const CoefficientSequence one({cxd(1.0, 0.0)});
  CHECK(eval_phi_F(one, 0.0) == cxd(std::exp(-kTwoPi), 0.0));
  for (double t : {0.3, 1.7, -2.2})
    CHECK(std::abs(eval_phi_F(one, t) - cxd(std::exp(-kTwoPi * std::cosh(t)), 0.0)) < 1e-300);

  // F = (0, i), t = 1: e^{-2 pi cosh 1} e^{-2 pi e} e^{-2 pi / e}
  const CoefficientSequence zi({cxd(0.0, 0.0), cxd(0.0, 1.0)});
  const double expect = std::exp(-kTwoPi * std::cosh(1.0)) * std::exp(-kTwoPi * std::exp(1.0)) *
                        std::exp(-kTwoPi * std::exp(-1.0));
  const cxd got = eval_phi_F(zi, 1.0);
  CHECK(std::abs(got - cxd(expect, 0.0)) <= 1e-15 * expect);
}

TEST_CASE("phi_F conjugate symmetry on random sequences", "[profiles]") {
  const auto seqs = random_sequences(40, 20240811u);
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> ut(-4.0, 4.0);
  int checked = 0;
  for (const auto& F : seqs) {
    for (int i = 0; i < 25; ++i) {
      const double t = ut(rng);
      const cxd a = eval_phi_F(F, -t);
      const cxd b = std::conj(eval_phi_F(F, t));
      // identical operations up to conjugation: exact or ulp-scale
      CHECK(std::abs(a - b) <= 1e-15 * std::abs(b) + 1e-300);
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("eval_phi_tilde_F examples", "[profiles]") {
  const CoefficientSequence one({cxd(1.0, 0.0)});
  CHECK(std::abs(eval_phi_tilde_F(one, 0.0) - cxd(std::exp(-kTwoPi) / 2.0, 0.0)) < 1e-300);
  const double expect = std::exp(-kTwoPi * std::cosh(1.0)) / (2.0 * std::cosh(0.5));
  CHECK(std::abs(eval_phi_tilde_F(one, 1.0) - cxd(expect, 0.0)) <= 1e-15 * expect);

  for (const auto& F : random_sequences(10, 99u)) {
    const cxd a = eval_phi_tilde_F(F, -2.0);
    const cxd b = std::conj(eval_phi_tilde_F(F, 2.0));
    CHECK(std::abs(a - b) <= 1e-15 * std::abs(b) + 1e-300);
  }
}

TEST_CASE("delta_coefficients at small N", "[profiles]") {
  CHECK(delta_coefficients(0) == std::vector<long long>{1});
  CHECK(delta_coefficients(1) == std::vector<long long>{1, -12});
  // N = 3 against the independent polynomial-multiplication oracle
  const std::vector<long long> expect = oracles::eta12_coefficients(3, 3);
  CHECK(delta_coefficients(3) == expect);
  CHECK(delta_coefficients(3) == std::vector<long long>{1, -12, 54, -88});
  CHECK_THROWS_AS(delta_coefficients(-1), std::invalid_argument);
}

TEST_CASE("delta_coefficients agrees with the oracle out to N = 32", "[profiles]") {
  CHECK(delta_coefficients(32) == oracles::eta12_coefficients(32, 32));
}

TEST_CASE("checked integer arithmetic overflows loudly", "[profiles]") {
  CHECK_THROWS_AS(xizeros::detail::checked_mul(1LL << 62, 4LL), error);
  CHECK_THROWS_AS(
      xizeros::detail::checked_add(std::numeric_limits<long long>::max(), 1LL), error);
  try {
    xizeros::detail::checked_mul(1LL << 62, 1LL << 62);
    FAIL("expected overflow");
  } catch (const error& e) {
    CHECK(e.kind() == errc::coefficient_overflow);
  }
}

TEST_CASE("vanishing_order examples", "[profiles]") {
  CHECK(CoefficientSequence({cxd(1, 0)}).k() == 0);
  CHECK(CoefficientSequence({cxd(1, 0), cxd(-1, 0)}).k() == 1);
  CHECK(CoefficientSequence({cxd(1, 0), cxd(-2, 0), cxd(1, 0)}).k() == 2);
  // P(y) = (1 - y)^3 = 1 - 3y + 3y^2 - y^3
  CHECK(CoefficientSequence({cxd(1, 0), cxd(-3, 0), cxd(3, 0), cxd(-1, 0)}).k() == 3);
}

TEST_CASE("vanishing_order is scale invariant", "[profiles]") {
  const auto seqs = random_sequences(30, 5150u);
  const cxd scales[] = {cxd(3.0, 0.0), cxd(0.0, -2.0), cxd(1e-6, 1e-6), cxd(-17.3, 0.4)};
  for (const auto& F : seqs) {
    for (const cxd& c : scales) {
      std::vector<cxd> scaled = F.coeffs();
      for (cxd& a : scaled) a *= c;
      CHECK(CoefficientSequence(scaled).k() == F.k());
    }
  }
  // and on a sequence with forced vanishing: c (1 - y)^2
  std::vector<cxd> base = {cxd(1, 0), cxd(-2, 0), cxd(1, 0)};
  for (cxd& a : base) a *= cxd(0.0, 5.0);
  CHECK(CoefficientSequence(base).k() == 2);
}

TEST_CASE("CoefficientSequence invariants", "[profiles]") {
  CHECK_THROWS_AS(CoefficientSequence(std::vector<cxd>{}), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence({cxd(0, 0), cxd(0, 0)}), std::invalid_argument);
  const CoefficientSequence F({cxd(0, 0), cxd(2, 0), cxd(0, 0)});
  CHECK(F.n() == 2);
  CHECK(F.effective_n() == 1);
  CHECK(F.nonzero_count() == 1);
}

TEST_CASE("phi_{F^(N)} converges uniformly to phi on |t| <= 5", "[profiles]") {
  // max |phi_{F^(N)} - phi| must decrease monotonically for N in {2,4,8,16}
  double prev = std::numeric_limits<double>::infinity();
  for (int N : {2, 4, 8, 16}) {
    const CoefficientSequence F = CoefficientSequence::delta_truncation(N);
    double worst = 0.0;
    for (double t = -5.0; t <= 5.0 + 1e-9; t += 0.05) {
      const double phi = eval_phi(t, 40);
      const cxd approx = eval_phi_F(F, t);
      worst = std::max(worst, std::abs(approx - cxd(phi, 0.0)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev < 1e-8);  // N = 16 is already deep in agreement
}
