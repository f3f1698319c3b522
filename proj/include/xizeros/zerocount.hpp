// Zero location and the counting functions of C_F.
//
// C_F is real on Re s = 0 (conjugate symmetry of phi_F), so on-line zeros
// come from sign changes of g(tau) = Re C_F(i tau), bisected to 1e-10 and
// confirmed by a small winding box; the strip count N-bar comes from the
// boundary winding of (-beta, beta) x (-T, T).  Exact integer agreement
// between the winding mass and the located-zero mass is the pipeline's
// internal consistency check; any surplus is off-line mass, localized by
// subdivision away from the line.
//
// Counting functions assembled per window:
//   N_bar    zeros with |Im s| < T, with multiplicity
//   N1_bar   simple zeros on Re s = 0 with |Im s| < T
//   N0'      distinct zeros on Re s = 0 with |Im s| < T
//   N_ki     zeros with 1 <= Im s < T, with multiplicity
//   histogram[k] = number of distinct on-line zeros of multiplicity k

#pragma once

#include <map>
#include <vector>

#include "xizeros/defaults.hpp"
#include "xizeros/winding.hpp"
#include "xizeros/xi_functions.hpp"

namespace xizeros {

struct CountReport {
  int N_bar = 0;
  int N1_bar = 0;
  int N0_prime = 0;
  int N_ki = 0;
  std::map<int, int> histogram;
  double T = 0.0;         // effective (jittered) half-height
  double T_requested = 0.0;
  double beta = 0.0;
  double ki_lower_edge = 1.0;
  std::vector<ZeroRecord> online_zeros;
  std::vector<ZeroRecord> offline_zeros;
  int unlocated_mass = 0;  // winding surplus the localizer could not attach
  bool symmetry_ok = true; // zero multiset invariant under s -> -conj(s)
  std::string convention =
      "open rectangles; edges jittered away from zeros by <= step/2; the "
      "N_ki lower edge Im s = 1 is jittered the same way";
};

namespace detail {

// First jitter candidate around x (spaced by at most `radius`) for which
// attempt() succeeds; tries x, x -+ radius/4, x -+ radius/2, ...
template <typename Fn>
double jittered(double x, double radius, Fn&& attempt) {
  const double offs[] = {0.0, -0.25, 0.25, -0.5, 0.5, -0.75, 0.75, -1.0, 1.0};
  for (double o : offs) {
    const double cand = x + o * radius;
    if (attempt(cand)) return cand;
  }
  throw error(errc::boundary_unresolvable,
              "count_report: no certifiable edge near " + std::to_string(x));
}

inline ZeroRecord make_offline_polish(const EvalContext& ctx, cxd seed, int mult) {
  // Newton with a central-difference derivative; C_F has no closed form.
  cxd z = seed;
  const double fd_h = 1e-6;
  for (int it = 0; it < 30; ++it) {
    const cxd fv = C_F(ctx, z).value;
    const cxd fp = (C_F(ctx, z + fd_h).value - C_F(ctx, z - fd_h).value) / (2.0 * fd_h);
    if (fp == cxd(0.0, 0.0)) break;
    const cxd step = static_cast<double>(mult) * fv / fp;
    z -= step;
    if (std::abs(step) < 1e-11) break;
  }
  if (std::abs(z - seed) > 1e-4) z = seed;
  ZeroRecord rec;
  rec.position = z;
  rec.multiplicity = mult;
  rec.on_line = std::abs(z.real()) <= defaults::kLineTol;
  rec.method = ZeroRecord::Method::winding;
  rec.residual = std::abs(C_F(ctx, z).value);
  return rec;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Line scan
// ---------------------------------------------------------------------------

// Scan g(tau) = Re C_F(i tau) over (-T, T): bracket sign changes, bisect to
// |interval| < 1e-10, and send near-tangencies (local |g| minima at noise
// level without a sign change) to a winding box for confirmation.  A zero
// whose bracket values sit below 3x the evaluation noise keeps its record
// but is flagged residual_trusted = false.
inline std::vector<ZeroRecord> line_scan_zeros(const EvalContext& ctx, double T,
                                               double step = defaults::kScanStep) {
  if (!(T > 0.0)) throw std::invalid_argument("line_scan_zeros: T must be > 0");
  if (!(step > 0.0 && step <= 0.1))
    throw std::invalid_argument("line_scan_zeros: step must be in (0, 0.1]");

  const auto g = [&ctx](double tau) {
    const QuadratureResult q = C_F(ctx, cxd(0.0, tau));
    return std::pair<double, double>(q.value.real(), q.err_estimate);
  };

  const long m = std::lround(std::ceil(2.0 * T / step));
  std::vector<double> taus(m + 1), gv(m + 1), ge(m + 1);
  for (long j = 0; j <= m; ++j) {
    // interior grid of the open interval (-T, T)
    taus[j] = -T + (2.0 * T) * (static_cast<double>(j) + 0.5) / (m + 1);
    const auto [v, e] = g(taus[j]);
    gv[j] = v;
    ge[j] = e;
  }

  std::vector<ZeroRecord> out;
  std::vector<double> winding_candidates;

  for (long j = 0; j + 1 <= m; ++j) {
    if (gv[j] == 0.0) continue;  // handled as a tangency candidate below
    if (gv[j] * gv[j + 1] < 0.0) {
      double lo = taus[j], hi = taus[j + 1];
      double flo = gv[j];
      for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
        const double mid = (lo + hi) / 2;
        const double fm = g(mid).first;
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double tau0 = (lo + hi) / 2;
      const auto [v0, e0] = g(tau0);
      ZeroRecord rec;
      rec.position = cxd(0.0, tau0);
      rec.multiplicity = 1;  // sign change: odd order; confirmed by classify
      rec.on_line = true;
      rec.method = ZeroRecord::Method::line_scan;
      rec.residual = std::abs(v0);
      rec.residual_trusted = std::min(std::abs(gv[j]), std::abs(gv[j + 1])) >
                             3.0 * std::max(ge[j], ge[j + 1]);
      out.push_back(rec);
    }
  }

  // Near-tangencies: local minima of |g| at noise level with no sign change.
  for (long j = 1; j + 1 <= m; ++j) {
    const double a = std::abs(gv[j]);
    if (a > std::abs(gv[j - 1]) || a > std::abs(gv[j + 1])) continue;
    if (gv[j - 1] * gv[j + 1] < 0.0) continue;  // belongs to a bracket above
    if (a > 10.0 * ge[j]) continue;
    winding_candidates.push_back(taus[j]);
  }
  for (double tau : winding_candidates) {
    bool near_existing = false;
    for (const ZeroRecord& r : out)
      near_existing = near_existing || std::abs(r.position.imag() - tau) < 2 * step;
    if (near_existing) continue;
    const Rectangle box(-2 * step, 2 * step, tau - 2 * step, tau + 2 * step);
    WindingOptions wopt;
    wopt.initial_step = step / 4;
    int w = 0;
    try {
      w = winding_count(C_F_callback(ctx), box, wopt);
    } catch (const error&) {
      continue;  // unresolvable little box: leave to the strip accounting
    }
    if (w <= 0) continue;
    SubdivisionOptions sopt;
    sopt.winding = wopt;
    sopt.winding.allow_dilation = false;
    const PolishFn polish = [&ctx](cxd seed, int mult) {
      return detail::make_offline_polish(ctx, seed, mult);
    };
    for (ZeroRecord rec : zeros_by_subdivision(C_F_callback(ctx), box, sopt, polish)) {
      rec.on_line = std::abs(rec.position.real()) <= defaults::kLineTol;
      if (rec.on_line) rec.position = cxd(0.0, rec.position.imag());
      out.push_back(rec);
    }
  }

  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.position.imag() != b.position.imag()) return a.position.imag() < b.position.imag();
    return a.position.real() < b.position.real();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicity classification
// ---------------------------------------------------------------------------

// Winding of C_F around the square of half-side r centered at z, with r
// grown from 1e-6 by x4 until the boundary certifies.  known_zeros guards
// against counting a neighbor: growth stops before 2r reaches the nearest
// other zero, and anything within 4e-6 aborts.
inline int classify_multiplicity(const EvalContext& ctx, cxd z, const PrecisionBudget& budget,
                                 std::span<const cxd> known_zeros = {}) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const cxd& other : known_zeros) {
    const double d = std::abs(other - z);
    if (d > 1e-9) nearest = std::min(nearest, d);
  }
  if (nearest < 4e-6)
    throw error(errc::crowded_neighborhood,
                "classify_multiplicity: another zero within 4e-6 of the target");
  WindingOptions wopt;
  wopt.max_evals = budget.max_evals;
  wopt.allow_dilation = false;
  for (double r = 1e-6; 2.0 * r < nearest && r < 0.5; r *= 4.0) {
    const Rectangle box(z.real() - r, z.real() + r, z.imag() - r, z.imag() + r);
    wopt.initial_step = r / 2;
    try {
      return winding_count(C_F_callback(ctx), box, wopt);
    } catch (const error& e) {
      if (e.kind() != errc::boundary_unresolvable) throw;
    }
  }
  throw error(errc::boundary_unresolvable,
              "classify_multiplicity: no certifiable box around the zero");
}

// ---------------------------------------------------------------------------
// Count report
// ---------------------------------------------------------------------------

namespace detail {

inline int strip_winding(const EvalContext& ctx, double beta, double t_lo, double t_hi) {
  WindingOptions wopt;
  wopt.allow_dilation = false;
  return winding_count(C_F_callback(ctx), Rectangle(-beta, beta, t_lo, t_hi), wopt);
}

}  // namespace detail

// Assemble every counting function over (-beta, beta) x (-T, T).  The
// horizontal edges (and the N_ki lower edge at Im s = 1) are jittered by at
// most step/2 when a zero sits at the requested height; counts are reported
// against the jittered window.
inline CountReport count_report(const EvalContext& ctx, double T, double beta,
                                const PrecisionBudget& budget) {
  if (!(T >= 2.0)) throw std::invalid_argument("count_report: T must be >= 2");
  if (!(beta > 0.0)) throw std::invalid_argument("count_report: beta must be > 0");
  const double step = defaults::kScanStep;

  CountReport rep;
  rep.T_requested = T;
  rep.beta = beta;

  int n_bar = 0;
  rep.T = detail::jittered(T, step, [&](double t_cand) {
    try {
      n_bar = detail::strip_winding(ctx, beta, -t_cand, t_cand);
      return true;
    } catch (const error& e) {
      if (e.kind() == errc::boundary_unresolvable) return false;
      throw;
    }
  });
  rep.N_bar = n_bar;

  // On-line zeros with multiplicity.
  std::vector<ZeroRecord> scan = line_scan_zeros(ctx, rep.T, step);
  std::vector<cxd> positions;
  for (const ZeroRecord& r : scan) positions.push_back(r.position);
  int online_mass = 0;
  for (ZeroRecord& r : scan) {
    if (r.method == ZeroRecord::Method::line_scan)
      r.multiplicity = classify_multiplicity(ctx, r.position, budget, positions);
    if (r.on_line) {
      rep.histogram[r.multiplicity] += 1;
      online_mass += r.multiplicity;
      rep.online_zeros.push_back(r);
    } else {
      rep.offline_zeros.push_back(r);  // tangency boxes can surface these
    }
  }
  rep.N0_prime = static_cast<int>(rep.online_zeros.size());
  rep.N1_bar = rep.histogram.count(1) ? rep.histogram.at(1) : 0;

  // Off-line surplus: strip mass not accounted for by located zeros.
  int located_mass = online_mass;
  for (const ZeroRecord& r : rep.offline_zeros) located_mass += r.multiplicity;
  int surplus = rep.N_bar - located_mass;
  if (surplus > 0) {
    const PolishFn polish = [&ctx](cxd seed, int mult) {
      return detail::make_offline_polish(ctx, seed, mult);
    };
    SubdivisionOptions sopt;
    sopt.winding.allow_dilation = false;
    for (int side = 0; side < 2 && surplus > 0; ++side) {
      const double gap = 1e-3;
      const Rectangle half = side == 0 ? Rectangle(gap, beta, -rep.T, rep.T)
                                       : Rectangle(-beta, -gap, -rep.T, rep.T);
      try {
        for (ZeroRecord rec : zeros_by_subdivision(C_F_callback(ctx), half, sopt, polish)) {
          bool dup = false;
          for (const ZeroRecord& have : rep.offline_zeros)
            dup = dup || std::abs(have.position - rec.position) < defaults::kDedupTol;
          if (dup) continue;
          rep.offline_zeros.push_back(rec);
          surplus -= rec.multiplicity;
        }
      } catch (const error& e) {
        if (e.kind() != errc::boundary_unresolvable) throw;
      }
    }
  }
  rep.unlocated_mass = std::max(0, surplus);
  if (rep.N_bar < located_mass)
    throw error(errc::snap_failure,
                "count_report: located zero mass exceeds the strip winding count");

  // Ki window 1 <= Im s < T.
  double ki_lo = 1.0;
  int n_ki = 0;
  ki_lo = detail::jittered(1.0, step, [&](double cand) {
    try {
      n_ki = detail::strip_winding(ctx, beta, cand, rep.T);
      return true;
    } catch (const error& e) {
      if (e.kind() == errc::boundary_unresolvable) return false;
      throw;
    }
  });
  rep.ki_lower_edge = ki_lo;
  rep.N_ki = n_ki;

  // Symmetry of the multiset under s -> -conj(s): on-line zeros are their
  // own mirrors, off-line zeros must pair within 1e-8.
  for (const ZeroRecord& r : rep.offline_zeros) {
    const cxd mirror = -std::conj(r.position);
    bool found = false;
    for (const ZeroRecord& o : rep.offline_zeros)
      found = found || std::abs(o.position - mirror) < defaults::kDedupTol;
    rep.symmetry_ok = rep.symmetry_ok && found;
  }

  std::sort(rep.offline_zeros.begin(), rep.offline_zeros.end(),
            [](const ZeroRecord& a, const ZeroRecord& b) {
              if (a.position.imag() != b.position.imag())
                return a.position.imag() < b.position.imag();
              return a.position.real() < b.position.real();
            });
  return rep;
}

inline CountReport count_report(const EvalContext& ctx, double T, double beta) {
  return count_report(ctx, T, beta, ctx.budget());
}

}  // namespace xizeros
