#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adaptive_simpson.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/profiles.hpp"

using namespace oscillab;

namespace {

double rel_l2(const SampledFunction& a, const SampledFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += std::norm(a.values[j] - b.values[j]);
    den += std::norm(b.values[j]);
  }
  return std::sqrt(num / den);
}

SampledFunction random_smooth(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<double, Complex>> modes;
  for (int i = 0; i < 5; ++i) modes.push_back({6.0 * u(rng), {u(rng), u(rng)}});
  return SampledFunction::sample(g, [&](double x) {
    Complex s = 0.0;
    for (const auto& [k, a] : modes) s += a * std::exp(Complex(0.0, k * x));
    return s * profiles::bump(x / 1.5);
  });
}

Grid kernel_grid(double lambda, double half_width) {
  return Grid::covering(0.0, half_width, 1.0 / (8.0 * lambda));
}

}  // namespace

TEST_CASE("kernel samples") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0, .u = 0.5};
  const double lambda = 256;
  const auto k = build_kernel(Phase::monomial(3), spec, lambda, kernel_grid(lambda, 1.0));
  const auto& g = k.grid();
  CHECK(k.samples().values[g.size() / 2] == Complex(k.cutoff()(0.0)));
  double mass_k = 0.0, mass_psi = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double psi = k.cutoff()(g.x(j));
    CHECK(std::abs(std::abs(k.samples().values[j]) - psi) <= 1e-15);
    mass_k += std::abs(k.samples().values[j]);
    mass_psi += psi;
  }
  CHECK(std::abs(mass_k - mass_psi) * g.step() <= 1e-12);
  CHECK(k.a1() == doctest::Approx(0.75));
}

TEST_CASE("resolution gate") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0, .u = 0.5};
  const Grid coarse = Grid::covering(0.0, 1.0, 1.0 / 64);
  try {
    build_kernel(Phase::monomial(3), spec, 64, coarse);
    FAIL("expected UnderResolved");
  } catch (const UnderResolved& e) {
    CHECK(e.max_step() == doctest::Approx(1.0 / 512));
  }
  CHECK_THROWS_AS(build_kernel(Phase::monomial(3), spec, 0.5, coarse), std::invalid_argument);
  CHECK(max_kernel_step(Phase::monomial(3), spec, 64) == doctest::Approx(1.0 / 512));
}

TEST_CASE("apply_T basics") {
  const FiniteTypeSpec spec{.ell = 2, .epsilon = 1.0, .u = 0.5};
  const double lambda = 16;
  const Grid g = kernel_grid(lambda, 3.0);
  const auto k = build_kernel(Phase::monomial(2), spec, lambda, g);

  const auto zero = apply_T(k, SampledFunction::zeros(g));
  for (const auto& z : zero.values) CHECK(z == Complex(0.0));

  const std::size_t at = g.nearest(0.8);
  auto delta = SampledFunction::zeros(g);
  delta.values[at] = 1.0 / g.step();
  const auto out = apply_T(k, delta);
  const auto shift = static_cast<std::ptrdiff_t>(at) - static_cast<std::ptrdiff_t>(g.size() / 2);
  const auto expected = shift_cells(k.samples(), shift);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(std::abs(out.values[j] - expected.values[j]) <= 1e-10);
  }

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_smooth(g, rng);
    const auto fast = apply_T(k, f, ApplyMode::fft);
    CHECK(rel_l2(fast, apply_T(k, f, ApplyMode::quadrature)) <= 1e-8);
    // Young: ||K * f||_2 <= ||K||_1 ||f||_2.
    CHECK(lp_norm(fast, 2) <= lp_norm(k.samples(), 1) * lp_norm(f, 2) * (1 + 1e-10));
  }
}

TEST_CASE("spectrum against adaptive quadrature") {
  for (const auto& [ell, lambda] : {std::pair{2, 64.0}, std::pair{3, 256.0}}) {
    const FiniteTypeSpec spec{.ell = ell, .epsilon = 1.0, .u = 0.5};
    const Phase phase = Phase::monomial(ell);
    const auto k = build_kernel(phase, spec, lambda, kernel_grid(lambda, 2.0));
    const auto s = kernel_spectrum(k);
    std::mt19937_64 rng(ell);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    double peak = 0.0;
    for (const auto& z : s.values) peak = std::max(peak, std::abs(z));
    int checked = 0;
    while (checked < 32) {
      const std::size_t j = pick(rng);
      const double xi = s.xi(j);
      if (std::abs(xi) > 2.0 * lambda) continue;
      const auto exact = oracle::adaptive_simpson(
          [&](double x) {
            return std::polar(profiles::bump(x / 0.5), lambda * std::pow(x, ell) - xi * x);
          },
          -0.5, 0.5, 1e-10, 256);
      CHECK(std::abs(s.values[j] - exact) <= 1e-6 * std::max(std::abs(exact), 1e-3 * peak));
      ++checked;
    }
  }
}

TEST_CASE("spectrum without oscillation is the cutoff transform") {
  const FiniteTypeSpec spec{.ell = 2, .epsilon = 1.0, .u = 0.5};
  const auto k = build_kernel(Phase::monomial(2).scaled(0.0), spec, 32, kernel_grid(32, 2.0));
  const auto s = kernel_spectrum(k);
  const double peak = std::abs(s.values[s.size() / 2]);
  for (std::size_t j = 0; j < s.size(); j += 97) {
    const double xi = s.xi(j);
    const auto exact = oracle::adaptive_simpson(
        [&](double x) { return std::polar(profiles::bump(x / 0.5), -xi * x); }, -0.5, 0.5, 1e-12, 128);
    CHECK(std::abs(s.values[j] - exact) <= 1e-6 * std::max(std::abs(exact), 1e-4 * peak));
  }
}

TEST_CASE("spectral symmetries") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0, .u = 0.5};
  const auto odd = kernel_spectrum(build_kernel(Phase::monomial(3), spec, 128, kernel_grid(128, 2.0)));
  double peak = 0.0;
  for (const auto& z : odd.values) peak = std::max(peak, std::abs(z));
  // Odd phase, even cutoff: K(-x) = conj K(x), so the spectrum is real.
  for (const auto& z : odd.values) CHECK(std::abs(z.imag()) <= 1e-12 * peak);

  const FiniteTypeSpec even_spec{.ell = 2, .epsilon = 1.0, .u = 0.5};
  const auto even = kernel_spectrum(build_kernel(Phase::monomial(2), even_spec, 128, kernel_grid(128, 2.0)));
  const std::size_t n = even.size();
  for (std::size_t j = 1; j < n; ++j) CHECK(std::abs(even.values[j] - even.values[n - j]) <= 1e-12 * peak);
}

TEST_CASE("translating the kernel multiplies the spectrum by a phase") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0, .u = 0.5};
  const Grid g = kernel_grid(64, 2.0);
  const double a = 37 * g.step();
  const auto base = kernel_spectrum(build_kernel(Phase::monomial(3), spec, 64, g));
  const auto moved = kernel_spectrum(build_kernel(Phase::monomial(3), spec, 64, g, a));
  double peak = 0.0;
  for (const auto& z : base.values) peak = std::max(peak, std::abs(z));
  for (std::size_t j = 0; j < base.size(); ++j) {
    const Complex expected = std::polar(1.0, -base.xi(j) * a) * base.values[j];
    CHECK(std::abs(moved.values[j] - expected) <= 1e-12 * peak);
  }
}

TEST_CASE("modulation covariance") {
  const FiniteTypeSpec spec{.ell = 3, .epsilon = 1.0, .u = 0.5};
  const double lambda = 32, a = 0.7, b = 0.4;
  const Grid g = kernel_grid(lambda, 2.0);
  const auto k = build_kernel(Phase::monomial(3), spec, lambda, g);
  const auto k2 = build_kernel(Phase::monomial(3).plus_affine(a, b), spec, lambda, g);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(k2.samples().values[j] == k.samples().values[j]);

  // The raw kernel e^{i lambda (a + b x)} K acts on f as the normalized one acts
  // on e^{-i lambda b y} f, up to a unimodular factor on the output.
  auto raw = k.samples();
  for (std::size_t j = 0; j < g.size(); ++j) raw.values[j] *= std::polar(1.0, lambda * (a + b * g.x(j)));
  std::mt19937_64 rng(8);
  const auto f = random_smooth(g, rng);
  auto fm = f;
  for (std::size_t j = 0; j < g.size(); ++j) fm.values[j] *= std::polar(1.0, -lambda * b * g.x(j));
  const auto lhs = convolve(f, raw);
  const auto rhs = apply_T(k, fm);
  for (double p : {2.0, 3.0}) {
    CHECK(lp_norm(lhs, p) == doctest::Approx(lp_norm(rhs, p)).epsilon(1e-10));
  }
}

TEST_CASE("decay report") {
  const FiniteTypeSpec spec{.ell = 2, .epsilon = 1.0, .u = 0.5};
  const double lambda = 1024;
  const auto k = build_kernel(Phase::monomial(2), spec, lambda, kernel_grid(lambda, 8.0));
  const auto r = check_decay(k, 4);
  // Stationary phase: |K^(0)| ~ sqrt(pi / lambda) psi(0).
  CHECK(r.sup_low * std::sqrt(lambda) == doctest::Approx(std::sqrt(std::numbers::pi) / std::exp(1.0)).epsilon(0.05));
  CHECK(r.tail_constants.size() == 5);
  CHECK(std::isfinite(r.far_field));
  CHECK(r.tail_max > 0.0);
  CHECK(decay_csv({r}).starts_with("lambda,ell,sup_low,tail_max,far_field\n1024,2,"));
}
