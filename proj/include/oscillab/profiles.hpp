#pragma once

// Smooth compactly supported profiles shared by cutoffs, mollifiers and
// frequency windows.

#include <cmath>

namespace oscillab::profiles {

/// exp(-1/(1-t^2)) on (-1,1), zero elsewhere. Peak value e^{-1} at t=0.
inline double bump(double t) {
  const double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

/// C-infinity transition: 0 for u <= 0, 1 for u >= 1.
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

/// Plateau: 1 on |t| <= 1, 0 on |t| >= 2, smooth and monotone in between.
inline double plateau(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  return smooth_step(2.0 - a);
}

}  // namespace oscillab::profiles
