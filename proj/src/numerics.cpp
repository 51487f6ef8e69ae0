#include "oscillab/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oscillab/errors.hpp"

namespace oscillab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-i xi_m a) for the grid origin a = c - n h / 2, xi_m = m dxi. The
// -n h/2 part contributes (-1)^m exactly.
Complex origin_phase(const Grid& g, std::ptrdiff_t m, int sign) {
  const double parity = (m % 2 == 0) ? 1.0 : -1.0;
  if (g.center() == 0.0) return {parity, 0.0};
  const double dxi = kTwoPi / (static_cast<double>(g.size()) * g.step());
  const double angle = static_cast<double>(sign) * static_cast<double>(m) * dxi * g.center();
  return parity * Complex(std::cos(angle), std::sin(angle));
}

std::ptrdiff_t lattice_offset(const Grid& g) {
  const double s = g.center() / g.step();
  const double r = std::round(s);
  if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s))) {
    throw GridMismatch("convolution requires the grid center to be a multiple of the step");
  }
  return static_cast<std::ptrdiff_t>(r);
}

}  // namespace

Grid Grid::covering(double center, double half_width, double step) {
  if (!(step > 0.0) || !(half_width > 0.0)) {
    throw std::invalid_argument("grid needs positive step and half-width");
  }
  const double cells = std::ceil(2.0 * half_width / step - 1e-9);
  if (cells > static_cast<double>(std::size_t{1} << 30)) {
    throw std::invalid_argument("grid too large");
  }
  const auto n = std::bit_ceil(static_cast<std::size_t>(std::max(cells, 2.0)));
  return Grid(center, step, n);
}

Grid Grid::with_size(double center, double step, std::size_t n) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (n < 2 || !std::has_single_bit(n)) {
    throw std::invalid_argument("grid size must be a power of two >= 2");
  }
  return Grid(center, step, n);
}

std::size_t Grid::nearest(double x) const noexcept {
  const double j = std::round((x - center_) / step_ + 0.5 * static_cast<double>(n_));
  if (j <= 0.0) return 0;
  if (j >= static_cast<double>(n_ - 1)) return n_ - 1;
  return static_cast<std::size_t>(j);
}

Grid Grid::dual() const {
  return Grid(0.0, kTwoPi / (static_cast<double>(n_) * step_), n_);
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) throw GridMismatch(std::string(context) + ": inputs live on different grids");
}

SampledFunction::SampledFunction(Grid g, std::vector<Complex> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("sample count does not match grid size");
  }
}

SampledFunction SampledFunction::zeros(const Grid& g) {
  return {g, std::vector<Complex>(g.size())};
}

SampledFunction SampledFunction::sample(const Grid& g, const std::function<Complex(double)>& fn) {
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(g.x(j));
  return {g, std::move(v)};
}

Weight::Weight(Grid g, std::vector<double> v) : grid_(g), values_(std::move(v)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("sample count does not match grid size");
  }
  for (double x : values_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
}

Weight Weight::zeros(const Grid& g) { return {g, std::vector<double>(g.size(), 0.0)}; }

Weight Weight::constant(const Grid& g, double c) { return {g, std::vector<double>(g.size(), c)}; }

Weight Weight::sample(const Grid& g, const std::function<double(double)>& fn) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(g.x(j));
  return {g, std::move(v)};
}

Weight Weight::from_real_part(const SampledFunction& f, double tol) {
  double peak = 0.0;
  for (const auto& z : f.values) peak = std::max(peak, std::abs(z.real()));
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = f.values[j].real();
    if (x < -tol * peak) throw std::invalid_argument("real part is materially negative");
    v[j] = std::max(x, 0.0);
  }
  return {f.grid, std::move(v)};
}

double Weight::max() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, x);
  return m;
}

Weight Weight::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return {grid_, std::move(v)};
}

SampledFunction Weight::as_function() const {
  std::vector<Complex> v(values_.begin(), values_.end());
  return {grid_, std::move(v)};
}

SpectralFunction forward_transform(const SampledFunction& f) {
  const std::size_t n = f.size();
  const double h = f.grid.step();
  std::vector<Complex> buffer(f.values);
  detail::fft_inplace(buffer, -1);

  SpectralFunction out{f.grid, f.grid.dual(), std::vector<Complex>(n)};
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(j) - half;
    const std::size_t idx = static_cast<std::size_t>((m + static_cast<std::ptrdiff_t>(n)) %
                                                     static_cast<std::ptrdiff_t>(n));
    out.values[j] = h * origin_phase(f.grid, m, -1) * buffer[idx];
  }

  double peak = 0.0;
  for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
  const std::size_t edge = std::max<std::size_t>(1, n / 40);  // 5% split over both ends
  double outer = 0.0;
  for (std::size_t j = 0; j < edge; ++j) {
    outer = std::max({outer, std::abs(f.values[j]), std::abs(f.values[n - 1 - j])});
  }
  out.truncation_warning = peak > 0.0 && outer > 1e-12 * peak;
  return out;
}

SampledFunction inverse_transform(const SpectralFunction& s) {
  const std::size_t n = s.size();
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  std::vector<Complex> buffer(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(j) - half;
    const std::size_t idx = static_cast<std::size_t>((m + static_cast<std::ptrdiff_t>(n)) %
                                                     static_cast<std::ptrdiff_t>(n));
    buffer[idx] = s.values[j] * origin_phase(s.spatial, m, +1);
  }
  detail::fft_inplace(buffer, +1);
  const double scale = 1.0 / (static_cast<double>(n) * s.spatial.step());
  for (auto& z : buffer) z *= scale;
  return {s.spatial, std::move(buffer)};
}

SpectralFunction spectral_from(const Grid& g, const std::function<Complex(double)>& multiplier) {
  SpectralFunction s{g, g.dual(), std::vector<Complex>(g.size())};
  for (std::size_t j = 0; j < s.size(); ++j) s.values[j] = multiplier(s.xi(j));
  return s;
}

SampledFunction apply_multiplier(const SampledFunction& f,
                                 const std::function<Complex(double)>& multiplier) {
  auto s = forward_transform(f);
  for (std::size_t j = 0; j < s.size(); ++j) s.values[j] *= multiplier(s.xi(j));
  return inverse_transform(s);
}

Convolver::Convolver(const SampledFunction& g)
    : grid_(g.grid), offset_(lattice_offset(g.grid)), padded_spectrum_(2 * g.size()) {
  std::copy(g.values.begin(), g.values.end(), padded_spectrum_.begin());
  detail::fft_inplace(padded_spectrum_, -1);
}

SampledFunction Convolver::apply(const SampledFunction& f) const {
  require_same_grid(f.grid, grid_, "convolve");
  const std::size_t n = f.size();
  std::vector<Complex> buffer(2 * n);
  std::copy(f.values.begin(), f.values.end(), buffer.begin());
  detail::fft_inplace(buffer, -1);
  for (std::size_t j = 0; j < buffer.size(); ++j) buffer[j] *= padded_spectrum_[j];
  detail::fft_inplace(buffer, +1);

  // Full linear convolution c[t] = sum_j f_j g_{t-j}; output sample k reads
  // t = k + n/2 - center/h.
  const double scale = f.grid.step() / static_cast<double>(2 * n);
  std::vector<Complex> out(n);
  const auto base = static_cast<std::ptrdiff_t>(n / 2) - offset_;
  for (std::size_t k = 0; k < n; ++k) {
    const std::ptrdiff_t t = static_cast<std::ptrdiff_t>(k) + base;
    if (t >= 0 && t < static_cast<std::ptrdiff_t>(2 * n - 1)) {
      out[k] = buffer[static_cast<std::size_t>(t)] * scale;
    }
  }
  return {f.grid, std::move(out)};
}

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f.grid, g.grid, "convolve");
  return Convolver(g).apply(f);
}

Weight convolve(const Weight& a, const Weight& b) {
  const auto c = convolve(a.as_function(), b.as_function());
  std::vector<double> v(c.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::max(c.values[j].real(), 0.0);
  return {a.grid(), std::move(v)};
}

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
  }
  double peak = 0.0;
  for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  // Scale by the peak so large p cannot overflow.
  double sum = 0.0;
  for (const auto& z : f.values) sum += std::pow(std::abs(z) / peak, p);
  return peak * std::pow(f.grid.step() * sum, 1.0 / p);
}

double lp_norm(const Weight& w, double p) { return lp_norm(w.as_function(), p); }

double weighted_l2(const SampledFunction& f, const Weight& w) {
  require_same_grid(f.grid, w.grid(), "weighted_l2");
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += std::norm(f.values[j]) * w[j];
  return f.grid.step() * sum;
}

double energy(const SampledFunction& f) {
  double sum = 0.0;
  for (const auto& z : f.values) sum += std::norm(z);
  return f.grid.step() * sum;
}

SampledFunction shift_cells(const SampledFunction& f, std::ptrdiff_t shift) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  std::vector<Complex> v(f.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t src = j - shift;
    if (src >= 0 && src < n) v[static_cast<std::size_t>(j)] = f.values[static_cast<std::size_t>(src)];
  }
  return {f.grid, std::move(v)};
}

Weight shift_cells(const Weight& w, std::ptrdiff_t shift) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
  std::vector<double> v(w.size(), 0.0);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t src = j - shift;
    if (src >= 0 && src < n) v[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(src)];
  }
  return {w.grid(), std::move(v)};
}

SampledFunction reflect(const SampledFunction& f) {
  const std::size_t n = f.size();
  std::vector<Complex> v(n);
  for (std::size_t j = 1; j < n; ++j) v[j] = f.values[n - j];
  return {f.grid, std::move(v)};
}

}  // namespace oscillab
