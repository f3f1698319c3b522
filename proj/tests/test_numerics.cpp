#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "xizeros/numerics.hpp"
#include "xizeros/profiles.hpp"

using namespace xizeros;

TEST_CASE("log_gamma at classical points", "[numerics]") {
  CHECK(std::abs(log_gamma(cxd(1.0, 0.0))) < 1e-13);
  CHECK(std::abs(log_gamma(cxd(0.5, 0.0)) - 0.5 * std::log(kPi)) < 1e-13);
  CHECK(std::abs(log_gamma(cxd(6.0, 0.0)) - std::log(120.0)) < 1e-12);
}

TEST_CASE("log_gamma pole detection", "[numerics]") {
  CHECK_THROWS_AS(log_gamma(cxd(0.0, 0.0)), error);
  CHECK_THROWS_AS(log_gamma(cxd(-3.0, 0.0)), error);
  try {
    log_gamma(cxd(-1.0, 0.0));
    FAIL("expected pole error");
  } catch (const error& e) {
    CHECK(e.kind() == errc::pole);
  }
}

TEST_CASE("log_gamma functional equation on a 100-point grid", "[numerics]") {
  // 0.5 <= |z| <= 50 away from the cut: exp(lg(z+1) - lg(z)) must return z.
  const double angles[] = {0.2, -0.2, 0.7, -0.7, 1.3, -1.3, 2.0, -2.0, 2.6, -2.6};
  int checked = 0;
  for (int i = 0; i < 10; ++i) {
    const double r = 0.5 * std::pow(100.0, i / 9.0);  // 0.5 .. 50
    for (double a : angles) {
      const cxd z = std::polar(r, a);
      const cxd back = std::exp(log_gamma(z + 1.0) - log_gamma(z));
      CHECK(std::abs(back - z) <= 1e-10 * std::abs(z));
      ++checked;
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("fourier_integral on the Gaussian", "[numerics]") {
  const auto gauss = [](double t) { return cxd(std::exp(-t * t), 0.0); };
  PrecisionBudget budget;

  QuadratureResult q0 = fourier_integral(gauss, cxd(0.0, 0.0), budget);
  CHECK(q0.converged);
  CHECK(std::abs(q0.value - cxd(std::sqrt(kPi), 0.0)) < 1e-9);

  // s = i: int e^{-t^2 - t} dt = sqrt(pi) e^{1/4}
  QuadratureResult qi = fourier_integral(gauss, cxd(0.0, 1.0), budget);
  CHECK(std::abs(qi.value - cxd(std::sqrt(kPi) * std::exp(0.25), 0.0)) < 1e-9);
}

TEST_CASE("fourier_integral of phi_(1) against the Bessel oracle", "[numerics]") {
  const CoefficientSequence F({cxd(1.0, 0.0)});
  const auto w = [&F](double t) { return eval_phi_F(F, t); };
  PrecisionBudget budget;
  for (double tau : {0.0, 1.0, 2.5, 5.0}) {
    const QuadratureResult q = fourier_integral(w, cxd(tau, 0.0), budget);
    const double expect = static_cast<double>(oracles::bessel_2K_itau_2pi(tau));
    CHECK(std::abs(q.value.real() - expect) < 1e-10);
    CHECK(std::abs(q.value.imag()) <= 2.0 * q.err_estimate);
  }
}

TEST_CASE("fourier_integral halving stability", "[numerics]") {
  const CoefficientSequence F({cxd(1.0, 0.0), cxd(-1.0, 0.0)});
  const auto w = [&F](double t) { return eval_phi_F(F, t); };
  PrecisionBudget a;
  PrecisionBudget b = a;
  b.t_cutoff += 1.0;
  b.max_evals *= 2;
  for (cxd s : {cxd(3.0, 0.0), cxd(7.0, 0.5), cxd(0.0, 2.0)}) {
    const QuadratureResult qa = fourier_integral(w, s, a, 4.0);
    const QuadratureResult qb = fourier_integral(w, s, b, 4.0);
    CHECK(std::abs(qa.value - qb.value) <= 2.0 * qa.err_estimate + 1e-300);
  }
}

TEST_CASE("fourier_integral conjugate symmetry at real s", "[numerics]") {
  // profile with w(-t) = conj(w(t)): imaginary part of the value is noise
  const CoefficientSequence F({cxd(1.0, 0.0), cxd(0.0, 1.0), cxd(-0.5, 0.25)});
  const auto w = [&F](double t) { return eval_phi_F(F, t); };
  PrecisionBudget budget;
  const double amp = F.abs_sum() * F.abs_sum();
  for (double tau : {0.0, 1.5, 4.0, 6.5}) {
    const QuadratureResult q = fourier_integral(w, cxd(tau, 0.0), budget, amp);
    CHECK(std::abs(q.value.imag()) <= q.err_estimate);
  }
}

TEST_CASE("fourier_integral converged flag honors the budget", "[numerics]") {
  const auto gauss = [](double t) { return cxd(std::exp(-t * t), 0.0); };
  PrecisionBudget tiny;
  tiny.max_evals = 64;  // minimum legal: cannot even do one refinement
  const QuadratureResult q = fourier_integral(gauss, cxd(0.0, 0.0), tiny);
  CHECK_FALSE(q.converged);
  CHECK(std::abs(q.value) > 0.0);  // best value still returned

  PrecisionBudget bad;
  bad.t_cutoff = 1.0;  // truncation tail of the Gaussian envelope way over abs_tol
  CHECK_THROWS_AS(fourier_integral(gauss, cxd(0.0, 15.0), bad), error);
}

TEST_CASE("continuous_argument on closed and straight paths", "[numerics]") {
  // unit circle once, step pi/8
  std::vector<cxd> circle;
  for (int j = 0; j <= 16; ++j) circle.push_back(std::polar(1.0, kTwoPi * j / 16.0));
  CHECK(continuous_argument(circle) == Catch::Approx(kTwoPi).margin(1e-12));

  std::vector<cxd> constant(7, cxd(1.0, 0.0));
  CHECK(continuous_argument(constant) == 0.0);

  // s^2 around the unit square boundary, counterclockwise: 4 pi
  std::vector<cxd> sq;
  const auto push_edge = [&sq](cxd a, cxd b) {
    for (int j = 0; j < 16; ++j) {
      const cxd z = a + (b - a) * (j / 16.0);
      sq.push_back(z * z);
    }
  };
  push_edge(cxd(1, -1), cxd(1, 1));
  push_edge(cxd(1, 1), cxd(-1, 1));
  push_edge(cxd(-1, 1), cxd(-1, -1));
  push_edge(cxd(-1, -1), cxd(1, -1));
  sq.push_back(cxd(1, -1) * cxd(1, -1));
  CHECK(continuous_argument(sq) == Catch::Approx(4.0 * kPi).margin(1e-12));
}

TEST_CASE("continuous_argument reversal negates", "[numerics]") {
  std::vector<cxd> path;
  for (int j = 0; j <= 40; ++j)
    path.push_back(std::polar(1.0 + 0.05 * j, 0.11 * j - 1.3));
  std::vector<cxd> rev(path.rbegin(), path.rend());
  CHECK(continuous_argument(path) == Catch::Approx(-continuous_argument(rev)).margin(1e-12));
}

TEST_CASE("continuous_argument rejects coarse sampling and zeros", "[numerics]") {
  std::vector<cxd> coarse = {cxd(1, 0), cxd(0, 1), cxd(-1, 0)};  // pi/2 jumps
  CHECK_THROWS_AS(continuous_argument(coarse), error);
  std::vector<cxd> with_zero = {cxd(1, 0), cxd(0, 0), cxd(-1, 0)};
  CHECK_THROWS_AS(continuous_argument(with_zero), std::invalid_argument);
}
