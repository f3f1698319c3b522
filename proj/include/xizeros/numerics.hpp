// Precision-aware numeric kernels shared by the whole library:
//
//   * log_gamma            -- principal branch of log Gamma on C \ (-inf, 0]
//   * fourier_integral     -- adaptive quadrature of integrals
//                             I(s) = \int_{-inf}^{inf} w(t) e^{i s t} dt
//                             for profiles w decaying like e^{-2 pi cosh t}
//   * continuous_argument  -- unwrapped argument change along a sampled path
//
// The Fourier kernel integrates by nested trapezoid refinement on the
// truncated interval [-t_cutoff, t_cutoff].  The e^{-2 pi cosh t} envelope
// makes the truncation tail computable in closed form, and the smooth,
// super-exponentially decaying integrand makes the trapezoid rule converge
// spectrally once the e^{i s t} oscillation is resolved (>= 8 samples per
// period of Re s).
//
// For large |Re s| the value |I(s)| ~ e^{-pi |Re s| / 2} sits far below the
// rounding floor eps * \int |w| of a real-line sum, so the analytic-profile
// overload may move the contour to Im t = theta (|theta| < pi/2, profile
// analytic in that strip).  The value is unchanged (Cauchy; the integrand
// vanishes super-exponentially at Re t = +-inf inside the strip) while the
// computed sum gains the factor e^{|theta Re s|} relative to its own
// cancellation, which restores 7+ significant digits out to |Re s| ~ 200.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xizeros {

using cxd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Failure taxonomy.  Soft outcomes (a budget that ran out, a flagged
// residual) are reported through result fields, not exceptions.
enum class errc {
  pole,                      // log_gamma at a non-positive integer
  invalid_cutoff,            // truncation tail at t_cutoff exceeds abs_tol
  phase_step_too_large,      // argument sampling too coarse
  boundary_unresolvable,     // rectangle edge cannot be certified zero-free
  snap_failure,              // winding refinement exhausted its budget
  crowded_neighborhood,      // another zero too close for classification
  denominator_uncertified,   // |h| not provably nonzero at a ratio point
  unstable_estimate,         // dispersion exceeds the estimated mean
  not_found,                 // search exhausted (almost period, beta0)
  coefficient_overflow,      // integer coefficient exceeds 64 signed bits
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

struct PrecisionBudget {
  double abs_tol = 1e-10;   // absolute error target
  double rel_tol = 1e-10;   // relative error target
  int max_evals = 1 << 17;  // cap on integrand samples
  double t_cutoff = 6.0;    // truncation half-width of the real interval

  void validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol > 0.0 || rel_tol > 0.0))
      throw std::invalid_argument("PrecisionBudget: need abs_tol > 0 or rel_tol > 0");
    if (max_evals < 64)
      throw std::invalid_argument("PrecisionBudget: max_evals must be >= 64");
    if (!(t_cutoff > 0.0))
      throw std::invalid_argument("PrecisionBudget: t_cutoff must be > 0");
  }
};

struct QuadratureResult {
  cxd value{0.0, 0.0};
  double err_estimate = 0.0;
  int evals_used = 0;
  bool converged = false;
};

// ---------------------------------------------------------------------------
// log Gamma
// ---------------------------------------------------------------------------

// Principal branch of log Gamma, branch cut along (-inf, 0].  Arguments are
// shifted up by the recurrence log G(z) = log G(z+1) - log z until
// Re z >= 12, then the Stirling series with Bernoulli terms through B_20 is
// applied.  At Re z >= 12 the first omitted term is below 1e-17 even at
// arg z near pi/2, so exp(log_gamma) is accurate to ~1e-13 relative for
// |z| <= 100.  log_gamma(z+1) = log_gamma(z) + log z holds away from the cut.
inline cxd log_gamma(cxd z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    throw error(errc::pole, "log_gamma: pole at non-positive integer z = " +
                                std::to_string(static_cast<long long>(z.real())));

  // B_{2k} / (2k (2k-1)), k = 1..10
  static constexpr double kStirling[] = {
      1.0 / 12.0,           -1.0 / 360.0,        1.0 / 1260.0,
      -1.0 / 1680.0,        1.0 / 1188.0,        -691.0 / 360360.0,
      1.0 / 156.0,          -3617.0 / 122400.0,  43867.0 / 244188.0,
      -174611.0 / 125400.0};

  cxd shift{0.0, 0.0};
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cxd zi = 1.0 / z;
  const cxd zi2 = zi * zi;
  cxd series{0.0, 0.0};
  cxd p = zi;
  for (double c : kStirling) {
    series += c * p;
    p *= zi2;
  }
  constexpr double kHalfLogTwoPi = 0.91893853320467274178;
  return (z - 0.5) * std::log(z) - z + kHalfLogTwoPi + series - shift;
}

inline cxd gamma_fn(cxd z) { return std::exp(log_gamma(z)); }

// ---------------------------------------------------------------------------
// Continuous argument
// ---------------------------------------------------------------------------

inline double wrap_to_pi(double d) {
  if (d > kPi) return d - kTwoPi;
  if (d <= -kPi) return d + kTwoPi;
  return d;
}

// Total unwrapped argument change along an ordered path of nonzero samples.
// Additive under concatenation; reversing the path negates the result.
// Consecutive wrapped jumps must stay below pi/2, otherwise the sampling is
// too coarse to unwrap reliably and phase_step_too_large is raised.
inline double continuous_argument(std::span<const cxd> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i] == cxd(0.0, 0.0))
      throw std::invalid_argument("continuous_argument: zero sample at index " +
                                  std::to_string(i));
  if (samples.size() < 2) return 0.0;
  double total = 0.0;
  double prev = std::arg(samples[0]);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double a = std::arg(samples[i]);
    const double d = wrap_to_pi(a - prev);
    if (std::abs(d) >= kPi / 2)
      throw error(errc::phase_step_too_large,
                  "continuous_argument: phase step " + std::to_string(d) +
                      " at index " + std::to_string(i) + " (sampling too coarse)");
    total += d;
    prev = a;
  }
  return total;
}

inline double continuous_argument(const std::vector<cxd>& samples) {
  return continuous_argument(std::span<const cxd>(samples));
}

// ---------------------------------------------------------------------------
// Fourier-type quadrature
// ---------------------------------------------------------------------------

// Profile analytic in the strip |Im t| < strip_halfwidth with the envelope
//   |eval(x + i y)| <= envelope_amp * exp(-2 pi cos(y) cosh(x))
// for |y| <= strip_halfwidth.  strip_halfwidth = 0 pins the contour to the
// real line.
struct AnalyticProfile {
  std::function<cxd(cxd)> eval;
  double strip_halfwidth = 0.0;
  double envelope_amp = 1.0;
};

namespace detail {

inline constexpr double kShiftActivation = 8.0;  // |Re s| beyond which to shift
inline constexpr double kShiftHeight = 1.35;     // contour height (< pi/2)
inline constexpr int kBaseIntervals = 64;

// Signed contour height for a given oscillation frequency.
inline double contour_shift_for(double re_s, double strip_halfwidth) {
  if (strip_halfwidth <= 0.0 || std::abs(re_s) <= kShiftActivation) return 0.0;
  const double th = std::min(kShiftHeight, strip_halfwidth);
  return re_s > 0.0 ? th : -th;
}

// Effective truncation half-width.  On a shifted contour the envelope decay
// weakens to e^{-2 pi cos(theta) cosh x}, so the cutoff grows until the
// envelope underflows and the tail stays controlled for |Im s| <= ~28.
inline double cutoff_for(double theta, double base_cutoff) {
  if (theta == 0.0) return base_cutoff;
  const double c = std::cos(theta);
  const double t_env = std::acosh(800.0 / (kTwoPi * c));
  const double t_tail = std::asinh(30.0 / (kTwoPi * c));
  return std::max({base_cutoff, t_env, t_tail});
}

// Nested dyadic samples of a profile along the contour Im t = theta.
// Level 0 stores all kBaseIntervals+1 points of the coarsest grid; level
// L >= 1 stores the new (odd-index) points of the 2^L-refined grid.  Shared
// by every evaluation with the same profile and contour, so repeated
// quadratures (line scans, winding counts) pay for the profile only once.
class ProfileCache {
 public:
  ProfileCache(std::function<cxd(cxd)> eval, double t_cut, double theta)
      : eval_(std::move(eval)), t_cut_(t_cut), theta_(theta) {}

  double t_cut() const { return t_cut_; }
  double theta() const { return theta_; }

  // Values at the points of refinement level L (see class comment).
  const std::vector<cxd>& level(int L) {
    std::lock_guard<std::mutex> lock(mu_);
    if (L < static_cast<int>(levels_.size()) && !levels_[L].empty()) return levels_[L];
    if (L >= static_cast<int>(levels_.size())) levels_.resize(L + 1);
    std::vector<cxd>& out = levels_[L];
    if (L == 0) {
      const double h = 2.0 * t_cut_ / kBaseIntervals;
      out.resize(kBaseIntervals + 1);
      for (int j = 0; j <= kBaseIntervals; ++j)
        out[j] = eval_(cxd(-t_cut_ + j * h, theta_));
    } else {
      const long n_new = static_cast<long>(kBaseIntervals) << (L - 1);
      const double h = 2.0 * t_cut_ / (static_cast<long>(kBaseIntervals) << L);
      out.resize(n_new);
      for (long j = 0; j < n_new; ++j)
        out[j] = eval_(cxd(-t_cut_ + (2 * j + 1) * h, theta_));
    }
    return out;
  }

 private:
  std::function<cxd(cxd)> eval_;
  double t_cut_;
  double theta_;
  std::mutex mu_;
  std::vector<std::vector<cxd>> levels_;
};

// One profile, up to three contours (theta = 0, +-kShiftHeight).
class ContourCacheSet {
 public:
  explicit ContourCacheSet(AnalyticProfile profile) : profile_(std::move(profile)) {}

  const AnalyticProfile& profile() const { return profile_; }

  ProfileCache& cache_for(double theta, double t_cut) {
    const int idx = theta == 0.0 ? 0 : (theta > 0.0 ? 1 : 2);
    std::lock_guard<std::mutex> lock(mu_);
    if (!caches_[idx]) caches_[idx] = std::make_unique<ProfileCache>(profile_.eval, t_cut, theta);
    return *caches_[idx];
  }

 private:
  AnalyticProfile profile_;
  std::mutex mu_;
  std::unique_ptr<ProfileCache> caches_[3];
};

// Phase walker: e^{i s x} along an arithmetic progression of x, renormalized
// by a direct exp every 64 steps to keep the recurrence drift near 1 ulp.
class PhaseWalker {
 public:
  PhaseWalker(cxd s, double x0, double dx)
      : s_(s), x0_(x0), dx_(dx), step_(std::exp(cxd(0.0, 1.0) * s * dx)) {
    cur_ = std::exp(cxd(0.0, 1.0) * s_ * x0_);
  }

  cxd value() const { return cur_; }

  void advance() {
    ++idx_;
    if (idx_ % 64 == 0)
      cur_ = std::exp(cxd(0.0, 1.0) * s_ * (x0_ + idx_ * dx_));
    else
      cur_ *= step_;
  }

 private:
  cxd s_;
  double x0_, dx_;
  cxd step_;
  cxd cur_;
  long idx_ = 0;
};

struct TailBound {
  double value;  // bound on the neglected |t| > t_cut contribution (J-space)
  bool decaying; // false when 2 pi cos(theta) sinh(t_cut) <= |Im s| + 1
};

inline TailBound fourier_tail_bound(double amp, double theta, double t_cut, double im_s) {
  const double c = theta == 0.0 ? 1.0 : std::cos(theta);
  const double rate = kTwoPi * c * std::sinh(t_cut) - std::abs(im_s);
  if (rate <= 1.0) return {std::numeric_limits<double>::infinity(), false};
  const double ln_tail = std::log(2.0 * amp) - kTwoPi * c * std::cosh(t_cut) +
                         std::abs(im_s) * t_cut - std::log(rate);
  return {std::exp(std::min(700.0, ln_tail)), true};
}

// Core engine: trapezoid sums with dyadic refinement of
//   J = \int_{-t_cut}^{t_cut} w(x + i theta) e^{i s x} dx,
// returned as I = e^{-s theta} J.  err = last refinement difference + tail
// bound + rounding floor (4 eps * \int |integrand|), all scaled to I.
inline QuadratureResult fourier_core(const std::function<cxd(cxd)>& w,
                                     ProfileCache* cache, cxd s,
                                     const PrecisionBudget& budget, double amp,
                                     double theta, double t_cut) {
  budget.validate();
  const TailBound tail = fourier_tail_bound(amp, theta, t_cut, s.imag());
  if (!tail.decaying)
    throw error(errc::invalid_cutoff,
                "fourier_integral: integrand does not decay beyond t_cutoff = " +
                    std::to_string(t_cut) + " for Im s = " + std::to_string(s.imag()));
  const cxd scale = std::exp(-s * theta);  // I = scale * J
  const double scale_mag = std::abs(scale);
  if (budget.abs_tol > 0.0 && scale_mag * tail.value > budget.abs_tol)
    throw error(errc::invalid_cutoff,
                "fourier_integral: truncation tail bound " +
                    std::to_string(scale_mag * tail.value) + " exceeds abs_tol");

  const double eps = std::numeric_limits<double>::epsilon();
  // Resolution gate: >= 8 samples per period of the e^{i Re(s) x} oscillation.
  const long n_resolution =
      std::max<long>(256, static_cast<long>(std::ceil(8.0 * std::abs(s.real()) * t_cut / kPi)));

  long n = kBaseIntervals;
  double h = 2.0 * t_cut / n;
  long double sum_re = 0.0L, sum_im = 0.0L, sum_abs = 0.0L;

  // Base level.
  {
    const std::vector<cxd>* vals = cache ? &cache->level(0) : nullptr;
    PhaseWalker ph(s, -t_cut, h);
    for (long j = 0; j <= n; ++j) {
      cxd wv = vals ? (*vals)[j] : w(cxd(-t_cut + j * h, theta));
      cxd g = wv * ph.value();
      const double weight = (j == 0 || j == n) ? 0.5 : 1.0;
      sum_re += weight * g.real();
      sum_im += weight * g.imag();
      sum_abs += weight * std::abs(g);
      ph.advance();
    }
  }
  cxd trap(static_cast<double>(sum_re * h), static_cast<double>(sum_im * h));
  double l1 = static_cast<double>(sum_abs) * h;
  int evals = static_cast<int>(n) + 1;

  QuadratureResult res;
  res.converged = false;
  double diff = std::numeric_limits<double>::infinity();
  int level = 0;

  while (true) {
    const long n_new = n;  // number of fresh midpoints at the next level
    if (evals + n_new > budget.max_evals) break;
    ++level;
    h /= 2.0;
    const std::vector<cxd>* vals = cache ? &cache->level(level) : nullptr;
    long double add_re = 0.0L, add_im = 0.0L, add_abs = 0.0L;
    PhaseWalker ph(s, -t_cut + h, 2.0 * h);
    for (long j = 0; j < n_new; ++j) {
      cxd wv = vals ? (*vals)[j] : w(cxd(-t_cut + (2 * j + 1) * h, theta));
      cxd g = wv * ph.value();
      add_re += g.real();
      add_im += g.imag();
      add_abs += std::abs(g);
      ph.advance();
    }
    const cxd trap_new = 0.5 * trap + cxd(static_cast<double>(add_re * h),
                                          static_cast<double>(add_im * h));
    l1 = 0.5 * l1 + static_cast<double>(add_abs) * h;
    diff = std::abs(trap_new - trap);
    trap = trap_new;
    n *= 2;
    evals += static_cast<int>(n_new);

    const double floor_rounding = 4.0 * eps * l1;
    const double err_j = diff + tail.value + floor_rounding;
    const double tol_j = std::max(budget.abs_tol / std::max(scale_mag, 1e-300),
                                  budget.rel_tol * std::abs(trap));
    if (n >= n_resolution && err_j <= tol_j) {
      res.converged = true;
      break;
    }
  }

  const double floor_rounding = 4.0 * eps * l1;
  res.value = scale * trap;
  res.err_estimate = scale_mag * (std::min(diff, std::abs(trap) + tail.value) + tail.value + floor_rounding);
  res.evals_used = evals;
  return res;
}

}  // namespace detail

// Adaptive Fourier quadrature over the real line, truncated at
// budget.t_cutoff.  envelope_amp scales the e^{-2 pi cosh t} tail envelope.
inline QuadratureResult fourier_integral(const std::function<cxd(double)>& w, cxd s,
                                         const PrecisionBudget& budget,
                                         double envelope_amp = 1.0) {
  const auto wc = [&w](cxd t) { return w(t.real()); };
  return detail::fourier_core(wc, nullptr, s, budget, envelope_amp, 0.0, budget.t_cutoff);
}

// Analytic-profile overload: the contour may be shifted to Im t = +-1.35
// when |Re s| > 8 (value unchanged, cancellation removed).  An optional
// ContourCacheSet reuses profile samples across evaluations.
inline QuadratureResult fourier_integral(const AnalyticProfile& w, cxd s,
                                         const PrecisionBudget& budget,
                                         detail::ContourCacheSet* caches = nullptr) {
  const double theta = detail::contour_shift_for(s.real(), w.strip_halfwidth);
  const double t_cut = detail::cutoff_for(theta, budget.t_cutoff);
  detail::ProfileCache* cache = caches ? &caches->cache_for(theta, t_cut) : nullptr;
  return detail::fourier_core(w.eval, cache, s, budget, w.envelope_amp, theta, t_cut);
}

}  // namespace xizeros
