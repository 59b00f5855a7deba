#pragma once

#include <cmath>

namespace projreg {

// Default relative threshold for discarding singular values: keep sigma with
// sigma > rel_tol * sigma_max.
inline constexpr double kDefaultRankTol = 1e-12;

// Separate default for pseudoinverting the centered data factor; data noise
// and image collinearity are independent, so the two knobs are independent.
inline constexpr double kDefaultDataRankTol = 1e-10;

// Hybrid absolute/relative comparison, |a - b| <= atol + rtol*|b|.
inline bool approx_eq(double a, double b, double rtol = 1e-9,
                      double atol = 1e-12) {
  return std::abs(a - b) <= atol + rtol * std::abs(b);
}

// One-sided variant: a <= b up to the hybrid tolerance.
inline bool approx_le(double a, double b, double rtol = 1e-9,
                      double atol = 1e-12) {
  return a <= b + atol + rtol * std::abs(b);
}

}  // namespace projreg
