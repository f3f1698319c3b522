// Shipped defaults, all overridable per call.  Surfaced by the CLI's
// --print-defaults.

#pragma once

#include "xizeros/numerics.hpp"

namespace xizeros::defaults {

inline constexpr double kLineTol = 1e-9;    // |Re s| below which a zero is "on the line"
inline constexpr double kScanStep = 0.05;   // line-scan grid step
inline constexpr double kBeta = 3.0;        // strip half-width for counting
inline constexpr int kPhiProductTerms = 12; // truncation K of the phi(t) product
inline constexpr double kDedupTol = 1e-8;   // zero records closer than this merge

inline PrecisionBudget budget() { return PrecisionBudget{1e-10, 1e-10, 1 << 17, 6.0}; }

}  // namespace xizeros::defaults
