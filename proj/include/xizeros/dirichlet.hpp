// The Dirichlet-polynomial companion of a coefficient sequence:
//
//   psi_F(s)   = pi^{-s} sum_{m=0}^{n} a_m (2m+1)^{-s}
//   psi_{F,k}(s) = psi_F(s - k),  k = vanishing order of P at 1
//
// Factoring the largest exponential turns psi_{F,k} into
//   psi_{F,k}(s) = e^{-ln((2n+1) pi)(s-k)} sum_m p_m e^{beta_m s},
//   p_m = a_{n-m} e^{-beta_m k},  beta_m = ln((2n+1)/(2(n-m)+1)),
// an exponential polynomial whose zeros live in a vertical strip |Re s| < c0
// certified by single-term dominance, recur along quasi-periodic ladders,
// and obey the density bound n + ln(2n+1)/(2 pi) (T2 - T1) per window.

#pragma once

#include <optional>
#include <vector>

#include "xizeros/defaults.hpp"
#include "xizeros/profiles.hpp"
#include "xizeros/winding.hpp"

namespace xizeros {

inline cxd psi_F(const CoefficientSequence& F, cxd s) {
  static const double ln_pi = std::log(kPi);
  cxd sum{0.0, 0.0};
  const auto& a = F.coeffs();
  for (std::size_t m = 0; m < a.size(); ++m)
    if (a[m] != cxd(0.0, 0.0)) sum += a[m] * std::exp(-s * std::log(2.0 * m + 1.0));
  return std::exp(-s * ln_pi) * sum;
}

inline cxd psi_F_k(const CoefficientSequence& F, cxd s) { return psi_F(F, s - static_cast<double>(F.k())); }

// d/ds psi_{F,k}(s), exact term-by-term.
inline cxd psi_F_k_derivative(const CoefficientSequence& F, cxd s) {
  static const double ln_pi = std::log(kPi);
  const cxd w = s - static_cast<double>(F.k());
  cxd sum{0.0, 0.0};
  const auto& a = F.coeffs();
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] == cxd(0.0, 0.0)) continue;
    const double lq = std::log(2.0 * m + 1.0);
    sum += a[m] * (-(ln_pi + lq)) * std::exp(-w * (ln_pi + lq));
  }
  return sum;
}

// Sum of term magnitudes: the scale against which roundoff noise of the
// finite sum is measured.
inline double psi_F_k_scale(const CoefficientSequence& F, cxd s) {
  static const double ln_pi = std::log(kPi);
  const double re = s.real() - F.k();
  double sum = 0.0;
  const auto& a = F.coeffs();
  for (std::size_t m = 0; m < a.size(); ++m)
    sum += std::abs(a[m]) * std::exp(-re * (ln_pi + std::log(2.0 * m + 1.0)));
  return sum;
}

inline AnalyticFn psi_F_k_callback(const CoefficientSequence& F) {
  return [F](cxd s) {
    return EvalSample{psi_F_k(F, s), 1e-14 * psi_F_k_scale(F, s)};
  };
}

// ---------------------------------------------------------------------------
// Exponential-polynomial form
// ---------------------------------------------------------------------------

struct ExponentialPolynomial {
  struct Term {
    cxd p;
    double beta;
  };
  std::vector<Term> terms;  // beta strictly increasing, first is 0
  double prefactor_rate;    // ln((2n+1) pi)
  double prefactor_shift;   // k

  cxd prefactor(cxd s) const { return std::exp(-prefactor_rate * (s - prefactor_shift)); }

  cxd eval(cxd s) const {
    cxd sum{0.0, 0.0};
    for (const Term& t : terms) sum += t.p * std::exp(t.beta * s);
    return prefactor(s) * sum;
  }

  double beta_max() const { return terms.empty() ? 0.0 : terms.back().beta; }
};

inline ExponentialPolynomial to_exponential_polynomial(const CoefficientSequence& F) {
  const int n = F.effective_n();
  const int k = F.k();
  const auto& a = F.coeffs();
  ExponentialPolynomial ep;
  ep.prefactor_rate = std::log((2.0 * n + 1.0) * kPi);
  ep.prefactor_shift = k;
  for (int m = 0; m <= n; ++m) {
    const double beta = std::log((2.0 * n + 1.0) / (2.0 * (n - m) + 1.0));
    const cxd p = a[n - m] * std::exp(-beta * k);
    if (p == cxd(0.0, 0.0)) continue;  // zero-coefficient terms are dropped
    // equal frequencies cannot arise (beta_m strictly increasing in m), but
    // merge defensively if a caller rebuilt terms by hand
    if (!ep.terms.empty() && ep.terms.back().beta == beta)
      ep.terms.back().p += p;
    else
      ep.terms.push_back({p, beta});
  }
  return ep;
}

// ---------------------------------------------------------------------------
// Zero-free strip
// ---------------------------------------------------------------------------

struct StripBound {
  double c0 = 0.0;
  double side_plus = 0.0;   // right dominance abscissa
  double side_minus = 0.0;  // left dominance abscissa
  bool no_zeros = false;    // single nonzero coefficient: psi never vanishes
};

namespace detail {

// Root of a strictly monotone function by expanding bracket + bisection.
template <typename Fn>
double monotone_root(Fn&& g, bool increasing) {
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 200 && !(g(lo) < 0.0) == increasing; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && (g(hi) < 0.0) == increasing; ++i) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
    const double mid = (lo + hi) / 2;
    const bool neg = g(mid) < 0.0;
    if (neg == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace detail

// Dominance abscissas by monotone bisection: beyond side_plus the largest-
// frequency term strictly dominates the rest (no zeros, winding 0), below
// side_minus the beta = 0 term does.  c0 adds a 0.1 margin.
inline StripBound zero_free_strip_bound(const CoefficientSequence& F) {
  StripBound out;
  if (F.nonzero_count() < 2) {
    out.no_zeros = true;
    return out;
  }
  const ExponentialPolynomial ep = to_exponential_polynomial(F);
  const auto& t = ep.terms;
  const std::size_t M = t.size() - 1;

  // right: sum_{m<M} |p_m| e^{(beta_m - beta_M) s} - |p_M|, decreasing in s
  out.side_plus = detail::monotone_root(
      [&](double sig) {
        double r = -std::abs(t[M].p);
        for (std::size_t m = 0; m < M; ++m)
          r += std::abs(t[m].p) * std::exp((t[m].beta - t[M].beta) * sig);
        return r;
      },
      false);
  // left: sum_{m>0} |p_m| e^{beta_m s} - |p_0|, increasing in s
  out.side_minus = detail::monotone_root(
      [&](double sig) {
        double r = -std::abs(t[0].p);
        for (std::size_t m = 1; m <= M; ++m)
          r += std::abs(t[m].p) * std::exp(t[m].beta * sig);
        return r;
      },
      true);
  out.c0 = std::max(std::abs(out.side_plus), std::abs(out.side_minus)) + 0.1;
  return out;
}

// ---------------------------------------------------------------------------
// Zeros in a rectangle
// ---------------------------------------------------------------------------

namespace detail {

inline ZeroRecord polish_psi_zero(const CoefficientSequence& F, cxd seed, int mult) {
  cxd z = seed;
  for (int it = 0; it < 60; ++it) {
    const cxd fv = psi_F_k(F, z);
    const cxd fd = psi_F_k_derivative(F, z);
    if (fd == cxd(0.0, 0.0)) break;
    const cxd step = static_cast<double>(mult) * fv / fd;
    z -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) break;
  }
  if (std::abs(z - seed) > 1e-5) z = seed;  // reject a runaway iteration
  ZeroRecord rec;
  rec.position = z;
  rec.multiplicity = mult;
  rec.method = ZeroRecord::Method::winding;
  rec.residual = std::abs(psi_F_k(F, z));
  return rec;
}

}  // namespace detail

struct DirichletZerosResult {
  std::vector<ZeroRecord> zeros;
  Rectangle effective_rect;  // after jitter (edges move inward by <= 1/(4(2n+1)))
};

// Zeros of psi_{F,k} in rect with multiplicities: recursive winding
// subdivision to clusters of diameter < 1e-8, then a multiplicity-aware
// Newton polish with the exact derivative.
inline DirichletZerosResult dirichlet_zeros_in_rect_full(const CoefficientSequence& F,
                                                         const Rectangle& rect,
                                                         const PrecisionBudget& budget) {
  budget.validate();
  const AnalyticFn f = psi_F_k_callback(F);
  SubdivisionOptions opt;
  opt.winding.max_evals = budget.max_evals * 64L;  // psi is cheap and exact
  opt.winding.initial_step = std::min(0.1, 1.0 / (2.0 * (2.0 * F.effective_n() + 1.0)));
  const PolishFn polish = [&F](cxd seed, int mult) {
    return detail::polish_psi_zero(F, seed, mult);
  };

  const double jitter_unit = 1.0 / (4.0 * (2.0 * F.effective_n() + 1.0));
  for (int attempt = 0; attempt <= 8; ++attempt) {
    const double inset = attempt * jitter_unit / 8.0;
    if (rect.width() <= 2 * inset || rect.height() <= 2 * inset) break;
    const Rectangle r(rect.sigma0 + inset, rect.sigma1 - inset, rect.T1 + inset,
                      rect.T2 - inset);
    try {
      return DirichletZerosResult{zeros_by_subdivision(f, r, opt, polish), r};
    } catch (const error& e) {
      if (e.kind() != errc::boundary_unresolvable) throw;
    }
  }
  throw error(errc::boundary_unresolvable,
              "dirichlet_zeros_in_rect: boundary not certified after 8 jitters");
}

inline std::vector<ZeroRecord> dirichlet_zeros_in_rect(const CoefficientSequence& F,
                                                       const Rectangle& rect,
                                                       const PrecisionBudget& budget) {
  return dirichlet_zeros_in_rect_full(F, rect, budget).zeros;
}

// ---------------------------------------------------------------------------
// Density bound  (window count <= n + ln(2n+1)/(2 pi) (T2 - T1))
// ---------------------------------------------------------------------------

struct DensityReport {
  int zero_count = 0;
  double bound = 0.0;
  bool pass = false;
  Rectangle window{-1.0, 1.0, 0.0, 1.0};
  std::vector<ZeroRecord> zeros;
};

inline DensityReport density_check(const CoefficientSequence& F, double T1, double T2,
                                   double c, const PrecisionBudget& budget = defaults::budget()) {
  if (!(T1 < T2)) throw std::invalid_argument("density_check: need T1 < T2");
  const StripBound sb = zero_free_strip_bound(F);
  if (!sb.no_zeros && c < sb.c0)
    throw std::invalid_argument("density_check: c below the certified strip bound c0");
  DensityReport rep;
  if (sb.no_zeros) {
    rep.window = Rectangle(-c, c, T1, T2);
    rep.zero_count = 0;
    rep.bound = F.effective_n() +
                std::log(2.0 * F.effective_n() + 1.0) / kTwoPi * (T2 - T1);
    rep.pass = true;
    return rep;
  }
  DirichletZerosResult zr = dirichlet_zeros_in_rect_full(F, Rectangle(-c, c, T1, T2), budget);
  rep.window = zr.effective_rect;
  rep.zeros = std::move(zr.zeros);
  for (const ZeroRecord& z : rep.zeros) rep.zero_count += z.multiplicity;
  const int n = F.effective_n();
  rep.bound = n + std::log(2.0 * n + 1.0) / kTwoPi * rep.window.height();
  rep.pass = rep.zero_count <= rep.bound + 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Almost periods
// ---------------------------------------------------------------------------

inline double dist_to_two_pi_lattice(double x) { return std::abs(std::remainder(x, kTwoPi)); }

// Smallest grid point Pi in (1, search_limit] with every beta_m Pi within
// eps of 2 pi Z, scanned at step eps / (2 max beta).  Existence for large
// enough limits follows from simultaneous approximation; none within the
// limit returns nullopt.
inline std::optional<double> almost_period(const CoefficientSequence& F, double eps,
                                           double search_limit) {
  if (F.nonzero_count() < 2)
    throw std::invalid_argument("almost_period: need >= 2 nonzero coefficients");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("almost_period: need 0 < eps < 1");
  const ExponentialPolynomial ep = to_exponential_polynomial(F);
  std::vector<double> freqs;
  for (const auto& t : ep.terms)
    if (t.beta > 0.0) freqs.push_back(t.beta);
  const double step = eps / (2.0 * ep.beta_max());
  for (double pi_cand = 1.0 + step; pi_cand <= search_limit; pi_cand += step) {
    bool ok = true;
    for (double b : freqs)
      if (dist_to_two_pi_lattice(b * pi_cand) > eps) {
        ok = false;
        break;
      }
    if (ok) return pi_cand;
  }
  return std::nullopt;
}

inline double min_modulus_on_set(const CoefficientSequence& F, std::span<const cxd> grid) {
  if (grid.empty()) throw std::invalid_argument("min_modulus_on_set: empty grid");
  double mn = std::numeric_limits<double>::infinity();
  for (const cxd& s : grid) mn = std::min(mn, std::abs(psi_F_k(F, s)));
  return mn;
}

}  // namespace xizeros
