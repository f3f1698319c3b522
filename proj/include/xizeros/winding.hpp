// Argument-principle machinery: rectangles, zero records, boundary winding
// counts, and recursive-subdivision zero isolation for analytic callbacks
// that report their own evaluation error.
//
// A boundary sample is "certified" when |f| > certify_factor * err; a sample
// that fails certification means a zero may sit within the evaluation noise
// of the boundary, and the rectangle is dilated (when allowed) or the caller
// must jitter.  Between certified samples the edge is bisected until
// consecutive wrapped phase steps fall below max_phase_step and the modulus
// ratio stays moderate, which rules out unnoticed full turns at the stated
// sampling densities.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xizeros/numerics.hpp"

namespace xizeros {

struct Rectangle {
  double sigma0, sigma1;  // open vertical sides
  double T1, T2;          // open horizontal sides

  Rectangle(double s0, double s1, double t1, double t2)
      : sigma0(s0), sigma1(s1), T1(t1), T2(t2) {
    if (!(sigma0 < sigma1) || !(T1 < T2))
      throw std::invalid_argument("Rectangle: need sigma0 < sigma1 and T1 < T2");
  }

  double width() const { return sigma1 - sigma0; }
  double height() const { return T2 - T1; }
  double diameter() const { return std::hypot(width(), height()); }
  cxd center() const { return cxd((sigma0 + sigma1) / 2, (T1 + T2) / 2); }
  bool contains(cxd z) const {
    return z.real() > sigma0 && z.real() < sigma1 && z.imag() > T1 && z.imag() < T2;
  }
  Rectangle dilated(double rel) const {
    const double dw = width() * rel / 2, dh = height() * rel / 2;
    return Rectangle(sigma0 - dw, sigma1 + dw, T1 - dh, T2 + dh);
  }
};

struct ZeroRecord {
  enum class Method { line_scan, winding };

  cxd position{0.0, 0.0};
  int multiplicity = 1;
  bool on_line = false;  // |Re position| <= line_tol
  Method method = Method::winding;
  double residual = 0.0;
  bool residual_trusted = true;
};

inline const char* method_name(ZeroRecord::Method m) {
  return m == ZeroRecord::Method::line_scan ? "line-scan" : "winding";
}

struct EvalSample {
  cxd value{0.0, 0.0};
  double err = 0.0;
};

using AnalyticFn = std::function<EvalSample(cxd)>;

struct WindingOptions {
  double initial_step = 0.1;        // seed spacing along the boundary
  double max_phase_step = kPi / 2;  // refine until wrapped steps are below this
  double certify_factor = 10.0;     // |f| > factor * err at every sample
  long max_evals = 2'000'000;
  bool allow_dilation = true;       // up to 8 dilations of <= 1% total
};

namespace detail {

struct CertifyFailure {
  cxd where;
};

class EdgeWalker {
 public:
  EdgeWalker(const AnalyticFn& f, const WindingOptions& opt, long* evals)
      : f_(f), opt_(opt), evals_(evals) {}

  EvalSample eval(cxd z) const {
    if (++*evals_ > opt_.max_evals)
      throw error(errc::snap_failure, "winding_count: sample budget exhausted");
    EvalSample s = f_(z);
    if (!(std::abs(s.value) > opt_.certify_factor * s.err)) throw CertifyFailure{z};
    return s;
  }

  double arg_change(cxd za, const EvalSample& va, cxd zb, const EvalSample& vb,
                    int depth) const {
    const double d = wrap_to_pi(std::arg(vb.value) - std::arg(va.value));
    const double ratio = std::abs(vb.value) / std::abs(va.value);
    if (std::abs(d) < opt_.max_phase_step && ratio < 8.0 && ratio > 0.125) return d;
    if (depth >= 52)
      throw error(errc::snap_failure, "winding_count: cannot resolve boundary phase");
    const cxd zm = (za + zb) / 2.0;
    const EvalSample vm = eval(zm);
    return arg_change(za, va, zm, vm, depth + 1) + arg_change(zm, vm, zb, vb, depth + 1);
  }

  double edge(cxd a, const EvalSample& va, cxd b, const EvalSample& vb) const {
    const long seeds = std::max<long>(1, std::lround(std::ceil(std::abs(b - a) / opt_.initial_step)));
    double total = 0.0;
    cxd zp = a;
    EvalSample vp = va;
    for (long j = 1; j <= seeds; ++j) {
      const cxd z = j == seeds ? b : a + (b - a) * (static_cast<double>(j) / seeds);
      const EvalSample v = j == seeds ? vb : eval(z);
      total += arg_change(zp, vp, z, v, 0);
      zp = z;
      vp = v;
    }
    return total;
  }

 private:
  const AnalyticFn& f_;
  const WindingOptions& opt_;
  long* evals_;
};

}  // namespace detail

// Number of zeros of f inside rect, with multiplicity, as the boundary
// argument change / 2 pi.  Corner samples are shared, so the raw total is an
// integer multiple of 2 pi up to rounding; the 0.15 snap window guards the
// arithmetic all the same.
inline int winding_count(const AnalyticFn& f, const Rectangle& rect,
                         const WindingOptions& opt = {}) {
  for (int attempt = 0; attempt <= 8; ++attempt) {
    const Rectangle r = attempt == 0 ? rect : rect.dilated(attempt * 0.00125);
    long evals = 0;
    detail::EdgeWalker walker(f, opt, &evals);
    try {
      const cxd c0(r.sigma0, r.T1), c1(r.sigma1, r.T1), c2(r.sigma1, r.T2), c3(r.sigma0, r.T2);
      const EvalSample v0 = walker.eval(c0), v1 = walker.eval(c1), v2 = walker.eval(c2),
                       v3 = walker.eval(c3);
      double total = 0.0;
      total += walker.edge(c0, v0, c1, v1);
      total += walker.edge(c1, v1, c2, v2);
      total += walker.edge(c2, v2, c3, v3);
      total += walker.edge(c3, v3, c0, v0);
      const double raw = total / kTwoPi;
      const long k = std::lround(raw);
      if (std::abs(raw - k) > 0.15)
        throw error(errc::snap_failure,
                    "winding_count: raw winding " + std::to_string(raw) +
                        " is not within 0.15 of an integer");
      return static_cast<int>(k);
    } catch (const detail::CertifyFailure&) {
      if (!opt.allow_dilation)
        throw error(errc::boundary_unresolvable,
                    "winding_count: boundary sample not certified zero-free");
    }
  }
  throw error(errc::boundary_unresolvable,
              "winding_count: boundary not certified after 8 dilations");
}

inline int winding_count(const AnalyticFn& f, const Rectangle& rect,
                         const PrecisionBudget& budget) {
  WindingOptions opt;
  opt.max_evals = budget.max_evals;
  return winding_count(f, rect, opt);
}

// ---------------------------------------------------------------------------
// Zero isolation by recursive subdivision
// ---------------------------------------------------------------------------

struct SubdivisionOptions {
  WindingOptions winding{};         // allow_dilation is forced off internally
  double cluster_diameter = 1e-8;   // subdivide until a cluster fits in this
};

// polish(seed, multiplicity) refines a cluster center into a ZeroRecord.
using PolishFn = std::function<ZeroRecord(cxd, int)>;

namespace detail {

// Split fractions tried in order until the cut line certifies zero-free.
inline constexpr double kSplitFractions[] = {0.5,        15.0 / 32.0, 17.0 / 32.0,
                                             7.0 / 16.0, 9.0 / 16.0,  13.0 / 32.0,
                                             19.0 / 32.0, 3.0 / 8.0,  5.0 / 8.0};

inline bool segment_certifies(const AnalyticFn& f, cxd a, cxd b, const WindingOptions& opt) {
  const long m = std::max<long>(4, std::lround(std::ceil(std::abs(b - a) / (opt.initial_step / 2))));
  for (long j = 0; j <= m; ++j) {
    const cxd z = a + (b - a) * (static_cast<double>(j) / m);
    const EvalSample s = f(z);
    if (!(std::abs(s.value) > opt.certify_factor * s.err)) return false;
  }
  return true;
}

inline void subdivide_rec(const AnalyticFn& f, const Rectangle& rect,
                          const SubdivisionOptions& opt, const PolishFn& polish,
                          std::vector<ZeroRecord>& out, int depth) {
  WindingOptions wopt = opt.winding;
  wopt.allow_dilation = false;
  const int w = winding_count(f, rect, wopt);
  if (w == 0) return;
  if (rect.diameter() < opt.cluster_diameter) {
    out.push_back(polish(rect.center(), w));
    return;
  }
  if (depth > 120)
    throw error(errc::boundary_unresolvable, "zeros_by_subdivision: recursion too deep");

  const bool vertical_cut = rect.width() >= rect.height();
  for (double frac : kSplitFractions) {
    if (vertical_cut) {
      const double x = rect.sigma0 + rect.width() * frac;
      if (!segment_certifies(f, cxd(x, rect.T1), cxd(x, rect.T2), wopt)) continue;
      subdivide_rec(f, Rectangle(rect.sigma0, x, rect.T1, rect.T2), opt, polish, out, depth + 1);
      subdivide_rec(f, Rectangle(x, rect.sigma1, rect.T1, rect.T2), opt, polish, out, depth + 1);
    } else {
      const double y = rect.T1 + rect.height() * frac;
      if (!segment_certifies(f, cxd(rect.sigma0, y), cxd(rect.sigma1, y), wopt)) continue;
      subdivide_rec(f, Rectangle(rect.sigma0, rect.sigma1, rect.T1, y), opt, polish, out, depth + 1);
      subdivide_rec(f, Rectangle(rect.sigma0, rect.sigma1, y, rect.T2), opt, polish, out, depth + 1);
    }
    return;
  }
  throw error(errc::boundary_unresolvable,
              "zeros_by_subdivision: no zero-free split line found");
}

}  // namespace detail

// All zeros of f in rect (boundary must certify zero-free; callers jitter).
// Results sorted by (Im, Re).
inline std::vector<ZeroRecord> zeros_by_subdivision(const AnalyticFn& f, const Rectangle& rect,
                                                    const SubdivisionOptions& opt,
                                                    const PolishFn& polish) {
  std::vector<ZeroRecord> out;
  detail::subdivide_rec(f, rect, opt, polish, out, 0);
  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.position.imag() != b.position.imag()) return a.position.imag() < b.position.imag();
    return a.position.real() < b.position.real();
  });
  return out;
}

}  // namespace xizeros
