// The entire functions of the theory:
//
//   Xi_F(s) = \int phi_F(t) e^{i s t} dt           C_F(s) = Xi_F(-i s)
//   W_F(s)  = \int phi~_F(t) e^{i s t} dt
//
// Splitting e^{t/2} + e^{-t/2} off phi_F gives the exact decomposition
//   C_F(s) = W_F(-i s - i/2) + W_F(-i s + i/2) = h(s) + h*(-s),
//   h(s) = W_F(-i s - i/2),   h*(s) = conj(h(conj s)),
// and for Re s >= -1/4, |s| large,
//   h(s) = Gamma(s - k) (b_k psi_{F,k}(s) + O(|s|^{-1/2})),
// whose leading coefficient b_k is estimated here from sample ratios.

#pragma once

#include <vector>

#include "xizeros/defaults.hpp"
#include "xizeros/dirichlet.hpp"
#include "xizeros/numerics.hpp"
#include "xizeros/profiles.hpp"

namespace xizeros {

// Immutable evaluation context: the sequence, the budget, and shared contour
// caches so that repeated evaluations (scans, windings) sample each profile
// only once per grid level.
class EvalContext {
 public:
  EvalContext(CoefficientSequence F, PrecisionBudget budget = defaults::budget())
      : F_(std::move(F)), budget_(budget) {
    budget_.validate();
    phi_caches_ = std::make_shared<detail::ContourCacheSet>(phi_F_profile(F_));
    phi_tilde_caches_ = std::make_shared<detail::ContourCacheSet>(phi_tilde_F_profile(F_));
  }

  const CoefficientSequence& F() const { return F_; }
  const PrecisionBudget& budget() const { return budget_; }

  QuadratureResult xi_integral(cxd s) const {
    return fourier_integral(phi_caches_->profile(), s, budget_, phi_caches_.get());
  }
  QuadratureResult wf_integral(cxd s) const {
    return fourier_integral(phi_tilde_caches_->profile(), s, budget_, phi_tilde_caches_.get());
  }

 private:
  CoefficientSequence F_;
  PrecisionBudget budget_;
  std::shared_ptr<detail::ContourCacheSet> phi_caches_;
  std::shared_ptr<detail::ContourCacheSet> phi_tilde_caches_;
};

inline QuadratureResult xi_F(const EvalContext& ctx, cxd s) { return ctx.xi_integral(s); }

inline QuadratureResult C_F(const EvalContext& ctx, cxd s) {
  return ctx.xi_integral(cxd(0.0, -1.0) * s);  // Xi_F(-i s)
}

inline QuadratureResult W_F(const EvalContext& ctx, cxd s) { return ctx.wf_integral(s); }

inline QuadratureResult h_fn(const EvalContext& ctx, cxd s) {
  return ctx.wf_integral(cxd(0.0, -1.0) * s - cxd(0.0, 0.5));
}

// h*(-s) by the W_F shift identity (single quadrature); the conjugation
// route conj(h(-conj s)) is kept below as a cross-check.
inline QuadratureResult h_star_neg(const EvalContext& ctx, cxd s) {
  return ctx.wf_integral(cxd(0.0, -1.0) * s + cxd(0.0, 0.5));
}

inline QuadratureResult h_star_neg_by_conjugation(const EvalContext& ctx, cxd s) {
  QuadratureResult q = h_fn(ctx, -std::conj(s));
  q.value = std::conj(q.value);
  return q;
}

// Analytic callbacks for the winding machinery.
inline AnalyticFn C_F_callback(const EvalContext& ctx) {
  return [ctx](cxd s) {
    const QuadratureResult q = C_F(ctx, s);
    return EvalSample{q.value, q.err_estimate};
  };
}

inline AnalyticFn h_callback(const EvalContext& ctx) {
  return [ctx](cxd s) {
    const QuadratureResult q = h_fn(ctx, s);
    return EvalSample{q.value, q.err_estimate};
  };
}

// F(s) = h*(-s) / h(s).  |F| = 1 on the imaginary axis away from zeros of h;
// |F| < 1 on far vertical lines (the stability side of the theory).
inline QuadratureResult F_ratio(const EvalContext& ctx, cxd s) {
  const QuadratureResult hq = h_fn(ctx, s);
  if (!(std::abs(hq.value) > 10.0 * hq.err_estimate))
    throw error(errc::denominator_uncertified,
                "F_ratio: |h(s)| not certified nonzero at this budget");
  const QuadratureResult nq = h_star_neg(ctx, s);
  QuadratureResult out;
  out.value = nq.value / hq.value;
  const double rel = nq.err_estimate / std::max(std::abs(nq.value), 1e-300) +
                     hq.err_estimate / std::abs(hq.value);
  out.err_estimate = std::abs(out.value) * rel;
  out.evals_used = hq.evals_used + nq.evals_used;
  out.converged = hq.converged && nq.converged;
  return out;
}

// ---------------------------------------------------------------------------
// Leading de Bruijn coefficient
// ---------------------------------------------------------------------------

struct BkEstimate {
  cxd mean{0.0, 0.0};       // trimmed mean of h / (Gamma(s-k) psi_{F,k})
  double dispersion = 0.0;  // rms deviation of the kept samples
  int samples_used = 0;
  int samples_excluded = 0;  // too close to a zero of psi_{F,k}
};

// Sample ratios h(s) / (Gamma(s-k) psi_{F,k}(s)) at s = sigma + i tau over
// tau_samples; a trimmed mean (top/bottom 10% by modulus) absorbs the
// O(|s|^{-1/2}) tail, which is not uniform near psi zeros.
inline BkEstimate estimate_b_k(const EvalContext& ctx, double sigma,
                               std::span<const double> tau_samples) {
  const CoefficientSequence& F = ctx.F();
  if (!(sigma >= -0.25 + 1e-6))
    throw std::invalid_argument("estimate_b_k: sigma must stay right of -1/4");
  std::vector<cxd> ratios;
  BkEstimate out;
  for (double tau : tau_samples) {
    if (!(std::abs(tau) >= 5.0))
      throw std::invalid_argument("estimate_b_k: need |tau| >= 5 for every sample");
    const cxd s(sigma, tau);
    const cxd psi = psi_F_k(F, s);
    if (std::abs(psi) < 1e-6 * psi_F_k_scale(F, s)) {
      ++out.samples_excluded;
      continue;
    }
    const cxd gam = gamma_fn(s - static_cast<double>(F.k()));
    ratios.push_back(h_fn(ctx, s).value / (gam * psi));
  }
  if (ratios.size() < 2)
    throw error(errc::unstable_estimate, "estimate_b_k: fewer than 2 usable samples");

  std::vector<std::size_t> order(ratios.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(ratios[a]) < std::abs(ratios[b]);
  });
  const std::size_t trim = ratios.size() / 10;
  cxd mean{0.0, 0.0};
  std::size_t kept = 0;
  for (std::size_t i = trim; i < order.size() - trim; ++i, ++kept) mean += ratios[order[i]];
  mean /= static_cast<double>(kept);
  double var = 0.0;
  for (std::size_t i = trim; i < order.size() - trim; ++i) {
    const double d = std::abs(ratios[order[i]] - mean);
    var += d * d;
  }
  out.mean = mean;
  out.dispersion = std::sqrt(var / static_cast<double>(kept));
  out.samples_used = static_cast<int>(kept);
  if (out.dispersion > std::abs(out.mean))
    throw error(errc::unstable_estimate,
                "estimate_b_k: dispersion exceeds |mean| (samples too close to psi "
                "zeros or |tau| too small)");
  return out;
}

}  // namespace xizeros
