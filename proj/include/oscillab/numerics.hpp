#pragma once

// Uniform grids, sampled functions, the Fourier transform under the
// convention f^(xi) = \int f(x) e^{-i xi x} dx, linear convolution and norms.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace oscillab {

using Complex = std::complex<double>;

/// Uniform grid of n = 2^k samples x_j = center + (j - n/2) h.
class Grid {
 public:
  /// Smallest power-of-two grid with step `step` covering
  /// [center - half_width, center + half_width]. The half-width is widened to
  /// n*step/2.
  static Grid covering(double center, double half_width, double step);
  /// Grid with exactly `n` samples; n must be a power of two.
  static Grid with_size(double center, double step, std::size_t n);

  double center() const noexcept { return center_; }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return 0.5 * static_cast<double>(n_) * step_; }
  double x(std::size_t j) const noexcept {
    return center_ + (static_cast<double>(j) - 0.5 * static_cast<double>(n_)) * step_;
  }
  double front() const noexcept { return x(0); }
  double back() const noexcept { return x(n_ - 1); }

  /// Index of the sample nearest to `x`, clamped to the grid.
  std::size_t nearest(double x) const noexcept;

  /// Frequency grid of the discrete transform: center 0, step 2 pi / (n h).
  Grid dual() const;

  bool operator==(const Grid& other) const noexcept = default;

 private:
  Grid(double center, double step, std::size_t n) : center_(center), step_(step), n_(n) {}
  double center_;
  double step_;
  std::size_t n_;
};

/// Throws GridMismatch unless the two grids are identical.
void require_same_grid(const Grid& a, const Grid& b, const char* context);

/// Complex samples on a grid.
struct SampledFunction {
  Grid grid;
  std::vector<Complex> values;

  SampledFunction(Grid g, std::vector<Complex> v);
  static SampledFunction zeros(const Grid& g);
  static SampledFunction sample(const Grid& g, const std::function<Complex(double)>& fn);

  std::size_t size() const noexcept { return values.size(); }
};

/// Nonnegative real samples on a grid.
class Weight {
 public:
  /// Throws std::invalid_argument on a negative or non-finite value.
  Weight(Grid g, std::vector<double> v);
  static Weight zeros(const Grid& g);
  static Weight constant(const Grid& g, double c);
  static Weight sample(const Grid& g, const std::function<double(double)>& fn);
  /// Real part of `f`, with negative rounding residue (>= -tol * max) set to
  /// zero. Larger negative values are an error.
  static Weight from_real_part(const SampledFunction& f, double tol = 1e-9);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  std::size_t size() const noexcept { return values_.size(); }
  double max() const noexcept;
  Weight scaled(double c) const;
  SampledFunction as_function() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Samples of a forward transform on the dual grid of `spatial`.
/// values[j] holds f^(xi_j) with xi_j = (j - n/2) * 2 pi / (n h).
struct SpectralFunction {
  Grid spatial;
  Grid frequencies;
  std::vector<Complex> values;
  /// Set when the input did not decay to 1e-12 (relative) on the outer 5% of
  /// its grid, so the periodic transform saw a truncated function.
  bool truncation_warning = false;

  double xi(std::size_t j) const noexcept { return frequencies.x(j); }
  std::size_t size() const noexcept { return values.size(); }
};

SpectralFunction forward_transform(const SampledFunction& f);
SampledFunction inverse_transform(const SpectralFunction& s);

/// Spectral function with values[j] = multiplier(xi_j) on the dual grid of g.
SpectralFunction spectral_from(const Grid& g, const std::function<Complex(double)>& multiplier);

/// Multiplies f^ by m(xi) and transforms back.
SampledFunction apply_multiplier(const SampledFunction& f,
                                 const std::function<Complex(double)>& multiplier);

/// (f*g)(x_k) = h sum_j f(x_j) g(x_k - x_j) with both inputs extended by zero
/// off the grid. The grid center must be an integer multiple of h.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);
Weight convolve(const Weight& a, const Weight& b);

/// Reusable zero-padded transform of a fixed right-hand factor g.
class Convolver {
 public:
  explicit Convolver(const SampledFunction& g);
  SampledFunction apply(const SampledFunction& f) const;
  const Grid& grid() const noexcept { return grid_; }

 private:
  Grid grid_;
  std::ptrdiff_t offset_;
  std::vector<Complex> padded_spectrum_;
};

/// (h sum |f|^p)^{1/p}; p = infinity gives max |f|. Requires p >= 1.
double lp_norm(const SampledFunction& f, double p);
double lp_norm(const Weight& w, double p);
/// h sum |f|^2 w (the squared weighted L^2 norm).
double weighted_l2(const SampledFunction& f, const Weight& w);
/// h sum |f|^2.
double energy(const SampledFunction& f);

/// Translate samples by `shift` cells (positive moves mass to larger x),
/// filling vacated cells with zero.
SampledFunction shift_cells(const SampledFunction& f, std::ptrdiff_t shift);
Weight shift_cells(const Weight& w, std::ptrdiff_t shift);

/// Reflection x -> -x about the grid center (index j -> n - j, index 0 maps
/// off-grid and becomes zero at index 0).
SampledFunction reflect(const SampledFunction& f);

namespace detail {
/// In-place unnormalized DFT, sign -1 (forward) or +1 (backward).
void fft_inplace(std::vector<Complex>& data, int sign);
}  // namespace detail

}  // namespace oscillab
