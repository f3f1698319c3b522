// Test-only oracles, deliberately independent of the library's adaptive
// machinery: fixed-step composite Simpson at high resolution, long double
// throughout, no refinement, no contour games.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

inline constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// 2 K_{i tau}(2 pi) = 2 \int_0^inf e^{-2 pi cosh t} cos(tau t) dt.
// Simpson with 400k panels on [0, 7]; good to ~1e-18 absolute for tau <= 12.
inline long double bessel_2K_itau_2pi(long double tau) {
  const long double tmax = 7.0L;
  const long N = 400000;
  const long double h = tmax / N;
  long double sum = 0.0L;
  for (long j = 0; j <= N; ++j) {
    const long double t = j * h;
    const long double w = (j == 0 || j == N) ? 1.0L : (j % 2 ? 4.0L : 2.0L);
    sum += w * std::exp(-2.0L * kPiL * std::cosh(t)) * std::cos(tau * t);
  }
  return 2.0L * sum * h / 3.0L;
}

// \int_{-inf}^{inf} e^{-2 pi cosh t} / (2 cosh(t/2)) dt  (W_{(1)}(0)).
inline long double w1_at_zero() {
  const long double tmax = 7.0L;
  const long N = 400000;
  const long double h = tmax / N;
  long double sum = 0.0L;
  for (long j = 0; j <= N; ++j) {
    const long double t = j * h;
    const long double w = (j == 0 || j == N) ? 1.0L : (j % 2 ? 4.0L : 2.0L);
    sum += w * std::exp(-2.0L * kPiL * std::cosh(t)) / (2.0L * std::cosh(t / 2.0L));
  }
  return 2.0L * sum * h / 3.0L;
}

// Count sign changes of tau -> 2 K_{i tau}(2 pi) on (lo, hi) at the given
// resolution (zeros of C_{(1)} on the line, independent route).
inline int bessel_sign_changes(long double lo, long double hi, long steps) {
  int count = 0;
  long double prev = bessel_2K_itau_2pi(lo);
  for (long j = 1; j <= steps; ++j) {
    const long double tau = lo + (hi - lo) * j / steps;
    const long double cur = bessel_2K_itau_2pi(tau);
    if (prev * cur < 0.0L) ++count;
    prev = cur;
  }
  return count;
}

// Truncated product phi(t) with K factors, multiplied term by term.
inline long double phi_product(long double t, int K) {
  long double prod = 1.0L;
  for (int k = 1; k <= K; ++k) {
    prod *= 1.0L - std::exp(-2.0L * kPiL * k * std::exp(t));
    prod *= 1.0L - std::exp(-2.0L * kPiL * k * std::exp(-t));
  }
  long double p12 = 1.0L;
  for (int i = 0; i < 12; ++i) p12 *= prod;
  return std::exp(-2.0L * kPiL * std::cosh(t)) * p12;
}

// prod_{k=1}^{kmax} (1 - q^k)^{12} mod q^{N+1} by naive polynomial products.
inline std::vector<long long> eta12_coefficients(int N, int kmax) {
  std::vector<long long> c{1};
  c.resize(N + 1, 0);
  for (int k = 1; k <= kmax; ++k) {
    // (1 - q^k)^{12} one binomial factor at a time: multiply 12 times by (1 - q^k)
    for (int rep = 0; rep < 12; ++rep) {
      std::vector<long long> out(N + 1, 0);
      for (int d = 0; d <= N; ++d) {
        if (c[d] == 0) continue;
        out[d] += c[d];
        if (d + k <= N) out[d + k] -= c[d];
      }
      c = std::move(out);
    }
  }
  return c;
}

}  // namespace oracles
