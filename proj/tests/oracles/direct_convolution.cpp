#include "direct_convolution.hpp"

#include <cmath>

namespace oracle {

using oscillab::Complex;
using oscillab::SampledFunction;

SampledFunction direct_convolution(const SampledFunction& f, const SampledFunction& g) {
  const auto& grid = f.grid;
  const auto n = static_cast<long>(f.size());
  const double h = grid.step();
  // g sample index holding x_k - x_j: (k - j) + n/2 - center/h.
  const long s = std::lround(grid.center() / h);
  std::vector<Complex> out(f.size());
  for (long k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (long j = 0; j < n; ++j) {
      const long i = k - j + n / 2 - s;
      if (i >= 0 && i < n) acc += f.values[static_cast<std::size_t>(j)] * g.values[static_cast<std::size_t>(i)];
    }
    out[static_cast<std::size_t>(k)] = h * acc;
  }
  return {grid, std::move(out)};
}

Complex direct_transform(const SampledFunction& f, double xi) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = f.grid.x(j);
    acc += f.values[j] * Complex(std::cos(xi * x), -std::sin(xi * x));
  }
  return f.grid.step() * acc;
}

}  // namespace oracle
