// Weight profiles and coefficient sequences.
//
//   phi(t)   = e^{-2 pi cosh t} prod_{k>=1} [(1 - e^{-2 pi k e^t})(1 - e^{-2 pi k e^{-t}})]^{12}
//   phi_F(t) = e^{-2 pi cosh t} (sum_m a_m e^{-2 pi m e^t})(sum_m conj(a_m) e^{-2 pi m e^{-t}})
//   phi~_F(t) = phi_F(t) / (e^{t/2} + e^{-t/2})
//
// A coefficient sequence F = (a_0, ..., a_n) carries its polynomial
// P(y) = sum a_m y^m and the vanishing order k of P at y = 1.  The canonical
// family F^(N) truncates prod_{k>=1}(1-q^k)^{12} at degree N, which makes
// phi_{F^(N)} converge to phi.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "xizeros/numerics.hpp"

namespace xizeros {

// Smallest k with P^(k)(1) != 0, by repeated synthetic division of P by
// (y - 1).  The j-th remainder equals P^(j)(1) / j!; it counts as zero when
// |P^(j)(1)| <= 1e-9 * max|a_m| * n!, the cliff that keeps integer-valued
// sequences far from the tolerance.
inline int vanishing_order(std::span<const cxd> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 0) throw std::invalid_argument("vanishing_order: empty coefficient list");
  double amax = 0.0;
  for (const cxd& a : coeffs) amax = std::max(amax, std::abs(a));
  if (amax == 0.0) throw std::invalid_argument("vanishing_order: all coefficients zero");
  const double ln_base = std::log(1e-9 * amax) + std::lgamma(n + 1.0);

  std::vector<cxd> poly(coeffs.begin(), coeffs.end());
  for (int j = 0; j <= n; ++j) {
    // remainder r = P(1), quotient by synthetic division
    const int deg = static_cast<int>(poly.size()) - 1;
    std::vector<cxd> q(std::max(deg, 0));
    cxd carry = poly[deg];
    for (int i = deg - 1; i >= 0; --i) {
      q[i] = carry;
      carry = poly[i] + carry;
    }
    const cxd r = carry;
    const double tol = std::exp(ln_base - std::lgamma(j + 1.0));
    if (std::abs(r) > tol) return j;
    if (deg == 0) return n;  // constant remainder judged zero: P ~ c (y-1)^n
    poly = std::move(q);
  }
  return n;
}

class CoefficientSequence {
 public:
  explicit CoefficientSequence(std::vector<cxd> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw std::invalid_argument("CoefficientSequence: empty coefficient list");
    bool any = false;
    for (const cxd& a : coeffs_) any = any || (a != cxd(0.0, 0.0));
    if (!any)
      throw std::invalid_argument("CoefficientSequence: at least one a_m must be nonzero");
    k_ = vanishing_order(coeffs_);
  }

  static CoefficientSequence delta_truncation(int N);

  const std::vector<cxd>& coeffs() const { return coeffs_; }
  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  int k() const { return k_; }

  // Largest index with a_m != 0; trailing zeros do not contribute to psi_F
  // or to the exponential-polynomial form.
  int effective_n() const {
    for (int m = n(); m >= 0; --m)
      if (coeffs_[m] != cxd(0.0, 0.0)) return m;
    return 0;
  }

  int nonzero_count() const {
    int c = 0;
    for (const cxd& a : coeffs_) c += (a != cxd(0.0, 0.0));
    return c;
  }

  double abs_sum() const {
    double s = 0.0;
    for (const cxd& a : coeffs_) s += std::abs(a);
    return s;
  }

  friend bool operator==(const CoefficientSequence& a, const CoefficientSequence& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<cxd> coeffs_;
  int k_;
};

// ---------------------------------------------------------------------------
// phi and its truncation tail
// ---------------------------------------------------------------------------

// Truncated product value with K factors.  Underflows to exact 0 for
// |t| >~ 5.5 (e^{-2 pi cosh t} below the double range).
inline double eval_phi(double t, int K) {
  if (K < 1) throw std::invalid_argument("eval_phi: K must be >= 1");
  const double ep = std::exp(t), em = std::exp(-t);
  double prod = 1.0;
  for (int k = 1; k <= K; ++k)
    prod *= (1.0 - std::exp(-kTwoPi * k * ep)) * (1.0 - std::exp(-kTwoPi * k * em));
  double p12 = 1.0;
  for (int i = 0; i < 12; ++i) p12 *= prod;
  return std::exp(-kTwoPi * std::cosh(t)) * p12;
}

// Monotone bound on the relative truncation error of eval_phi:
// 24 sum_{k>K} e^{-2 pi k e^{-|t|}}, summed in closed (geometric) form.
inline double phi_truncation_tail(double t, int K) {
  const double r = std::exp(-kTwoPi * std::exp(-std::abs(t)));
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return 24.0 * std::pow(r, K + 1) / (1.0 - r);
}

// ---------------------------------------------------------------------------
// phi_F and phi~_F
// ---------------------------------------------------------------------------

// Real-argument evaluation keeps the two sums in real arithmetic so that
// phi_F(-t) = conj(phi_F(t)) holds exactly (identical operations).
inline cxd eval_phi_F(const CoefficientSequence& F, double t) {
  const double ep = std::exp(t), em = std::exp(-t);
  cxd sum_plus{0.0, 0.0}, sum_minus{0.0, 0.0};
  const auto& a = F.coeffs();
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double wp = std::exp(-kTwoPi * static_cast<double>(m) * ep);
    const double wm = std::exp(-kTwoPi * static_cast<double>(m) * em);
    sum_plus += a[m] * wp;
    sum_minus += std::conj(a[m]) * wm;
  }
  return std::exp(-kTwoPi * std::cosh(t)) * sum_plus * sum_minus;
}

// Analytic continuation to complex t (entire).
inline cxd eval_phi_F(const CoefficientSequence& F, cxd t) {
  const cxd ep = std::exp(t), em = std::exp(-t);
  cxd sum_plus{0.0, 0.0}, sum_minus{0.0, 0.0};
  const auto& a = F.coeffs();
  for (std::size_t m = 0; m < a.size(); ++m) {
    sum_plus += a[m] * std::exp(-kTwoPi * static_cast<double>(m) * ep);
    sum_minus += std::conj(a[m]) * std::exp(-kTwoPi * static_cast<double>(m) * em);
  }
  return std::exp(-kTwoPi * std::cosh(t)) * sum_plus * sum_minus;
}

inline cxd eval_phi_tilde_F(const CoefficientSequence& F, double t) {
  return eval_phi_F(F, t) / (2.0 * std::cosh(t / 2.0));
}

// Meromorphic in t with poles at i pi (2j+1); usable in |Im t| < pi.
inline cxd eval_phi_tilde_F(const CoefficientSequence& F, cxd t) {
  return eval_phi_F(F, t) / (2.0 * std::cosh(t / 2.0));
}

// Analytic profiles for the Fourier kernel.  Envelope constants follow from
// |sum a_m e^{-2 pi m e^{+-t}}| <= sum |a_m| on any contour |Im t| <= 1.35
// and |2 cosh(t/2)| >= 2 cos(Im t / 2) there.
inline AnalyticProfile phi_F_profile(const CoefficientSequence& F) {
  const double a2 = F.abs_sum() * F.abs_sum();
  return AnalyticProfile{[F](cxd t) { return eval_phi_F(F, t); }, detail::kShiftHeight, a2};
}

inline AnalyticProfile phi_tilde_F_profile(const CoefficientSequence& F) {
  const double a2 = F.abs_sum() * F.abs_sum();
  const double amp = a2 / (2.0 * std::cos(detail::kShiftHeight / 2.0));
  return AnalyticProfile{[F](cxd t) { return eval_phi_tilde_F(F, t); }, detail::kShiftHeight, amp};
}

// ---------------------------------------------------------------------------
// Canonical coefficients: prod_{k=1}^{N} (1 - q^k)^{12} mod q^{N+1}
// ---------------------------------------------------------------------------

namespace detail {

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw error(errc::coefficient_overflow, "delta_coefficients: 64-bit overflow");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw error(errc::coefficient_overflow, "delta_coefficients: 64-bit overflow");
  return r;
}

}  // namespace detail

// Exact integer coefficients (c_0, ..., c_N); c_0 = 1.  Raises
// coefficient_overflow if a coefficient leaves signed 64-bit range.
inline std::vector<long long> delta_coefficients(int N) {
  if (N < 0) throw std::invalid_argument("delta_coefficients: N must be >= 0");
  // binomials C(12, j), signs (-1)^j
  static constexpr long long kBin12[] = {1, 12, 66, 220, 495, 792, 924,
                                         792, 495, 220, 66, 12, 1};
  std::vector<long long> c(N + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= N; ++k) {
    // multiply by (1 - q^k)^{12} = sum_j (-1)^j C(12,j) q^{k j}
    std::vector<long long> out(N + 1, 0);
    for (int d = 0; d <= N; ++d) {
      if (c[d] == 0) continue;
      for (int j = 0; j <= 12 && d + k * j <= N; ++j) {
        const long long term = detail::checked_mul(c[d], (j % 2 ? -kBin12[j] : kBin12[j]));
        out[d + k * j] = detail::checked_add(out[d + k * j], term);
      }
    }
    c = std::move(out);
  }
  return c;
}

inline CoefficientSequence CoefficientSequence::delta_truncation(int N) {
  const std::vector<long long> c = delta_coefficients(N);
  std::vector<cxd> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) a[i] = cxd(static_cast<double>(c[i]), 0.0);
  return CoefficientSequence(std::move(a));
}

inline int vanishing_order(const CoefficientSequence& F) { return F.k(); }

}  // namespace xizeros
