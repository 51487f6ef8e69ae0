#include "oscillab/windows.hpp"

#include <algorithm>
#include <cmath>

namespace oscillab {

namespace {
constexpr int kFractionBits = 100;
}

Quantized quantize(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  Quantized q;
  q.units.assign(values.size(), 0);
  if (peak == 0.0) {
    q.quantum = 1.0;
    return q;
  }
  int e = 0;
  std::frexp(peak, &e);  // peak < 2^e
  q.quantum = std::ldexp(1.0, e - kFractionBits);
  for (std::size_t i = 0; i < values.size(); ++i) {
    q.units[i] = static_cast<Wide>(std::nearbyint(std::ldexp(values[i], kFractionBits - e)));
  }
  return q;
}

WindowShape window_shape(double r, double h) {
  const double rho = r / h;
  if (rho < 0.5) return {-1, 2.0 * rho};
  const double m = std::floor(rho - 0.5);
  return {static_cast<long>(m), rho - (m + 0.5)};
}

double window_value(Wide core, Wide edge, double theta, double hq) {
  return hq * (static_cast<double>(core) + theta * static_cast<double>(edge));
}

WindowSums::WindowSums(const Weight& w)
    : h_(w.grid().step()), q_(quantize(w.values())), prefix_(w.size() + 1, 0) {
  for (std::size_t i = 0; i < w.size(); ++i) prefix_[i + 1] = prefix_[i] + q_.units[i];
}

std::vector<double> WindowSums::integrals(double r) const {
  const auto n = static_cast<long>(q_.units.size());
  const WindowShape s = window_shape(r, h_);
  const double hq = h_ * q_.quantum;
  auto unit = [&](long j) -> Wide { return (j >= 0 && j < n) ? q_.units[static_cast<std::size_t>(j)] : 0; };
  auto pre = [&](long k) { return prefix_[static_cast<std::size_t>(std::clamp(k, 0L, n))]; };
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Wide core = 0, edge = 0;
    if (s.m < 0) {
      edge = unit(i);
    } else {
      core = pre(i + s.m + 1) - pre(i - s.m);
      edge = unit(i - s.m - 1) + unit(i + s.m + 1);
    }
    out[static_cast<std::size_t>(i)] = window_value(core, edge, s.theta, hq);
  }
  return out;
}

}  // namespace oscillab
