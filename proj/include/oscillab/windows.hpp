#pragma once

// Exact window integrals of the piecewise-constant (cell-centred) interpolant
// of a weight. Samples are quantized to a 128-bit fixed-point lattice so that
// sums do not depend on summation order.

#include <cstddef>
#include <span>
#include <vector>

#include "oscillab/numerics.hpp"

namespace oscillab {

__extension__ typedef __int128 Wide;

struct Quantized {
  /// Value of one unit: 2^(e-100) with max |v| <= 2^e.
  double quantum = 0.0;
  std::vector<Wide> units;
};

Quantized quantize(std::span<const double> values);

/// [y - r, y + r] covers cells |d| <= m fully and cells d = +-(m+1) with
/// fraction theta. m = -1 means only the centre cell, with fraction theta = 2r/h.
struct WindowShape {
  long m = 0;
  double theta = 0.0;
};

WindowShape window_shape(double r, double h);

/// h q (core + theta edge) evaluated in one fixed order.
double window_value(Wide core, Wide edge, double theta, double hq);

/// Integral over [x_i - r, x_i + r] of the interpolant, for every i.
/// Weights are zero off the grid.
class WindowSums {
 public:
  explicit WindowSums(const Weight& w);
  std::vector<double> integrals(double r) const;
  const Quantized& quantized() const noexcept { return q_; }

 private:
  double h_;
  Quantized q_;
  std::vector<Wide> prefix_;  // prefix_[k] = sum of units[0..k)
};

}  // namespace oscillab
