#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "direct_convolution.hpp"
#include "oscillab/csv.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/numerics.hpp"

using namespace oscillab;

namespace {

double rel_l2(const SampledFunction& a, const SampledFunction& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += std::norm(a.values[j] - b.values[j]);
    den += std::norm(b.values[j]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

// Smooth random packet: Gaussian envelope times a short random trig sum.
SampledFunction random_packet(const Grid& g, std::mt19937_64& rng, double width) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = 0.3 * width * u(rng);
  std::vector<std::pair<double, Complex>> modes;
  for (int i = 0; i < 4; ++i) modes.push_back({8.0 * u(rng), {u(rng), u(rng)}});
  return SampledFunction::sample(g, [&](double x) {
    Complex s = 0.0;
    for (const auto& [k, a] : modes) s += a * std::exp(Complex(0.0, k * x));
    const double t = (x - c) / width;
    return s * std::exp(-0.5 * t * t);
  });
}

}  // namespace

TEST_CASE("grid layout") {
  const Grid g = Grid::covering(1.0, 3.0, 0.1);
  CHECK(g.size() == 64);
  CHECK(g.x(32) == doctest::Approx(1.0));
  CHECK(g.half_width() == doctest::Approx(3.2));
  CHECK(g.nearest(1.05 + 1e-9) == 33);
  CHECK(g.dual().step() == doctest::Approx(2 * std::numbers::pi / 6.4));
  CHECK_THROWS_AS(Grid::with_size(0.0, 0.1, 48), std::invalid_argument);
}

TEST_CASE("gaussian transform") {
  const Grid g = Grid::covering(0.0, 20.0, 0.01);
  const auto f = SampledFunction::sample(g, [](double x) { return std::exp(-0.5 * x * x); });
  const auto s = forward_transform(f);
  CHECK_FALSE(s.truncation_warning);
  const double peak = std::sqrt(2 * std::numbers::pi);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double xi = s.xi(j);
    if (std::abs(xi) > 10.0) continue;
    const double exact = peak * std::exp(-0.5 * xi * xi);
    const double err = std::abs(s.values[j] - exact);
    // Pointwise relative where the value clears the roundoff floor.
    if (exact > 1e-8 * peak) CHECK(err <= 1e-6 * exact);
    CHECK(err <= 1e-6 * peak);
  }
}

TEST_CASE("transform of zero and truncation flag") {
  const Grid g = Grid::covering(0.0, 4.0, 0.05);
  const auto s = forward_transform(SampledFunction::zeros(g));
  for (const auto& z : s.values) CHECK(z == Complex(0.0));
  CHECK_FALSE(s.truncation_warning);
  const auto one = SampledFunction::sample(g, [](double) { return Complex(1.0); });
  CHECK(forward_transform(one).truncation_warning);
}

TEST_CASE("round trip and parseval on an off-center grid") {
  std::mt19937_64 rng(7);
  const Grid g = Grid::covering(2.5, 12.0, 0.02);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_packet(g, rng, 1.5);
    const auto s = forward_transform(f);
    CHECK(rel_l2(inverse_transform(s), f) <= 1e-10);
    double spectral = 0.0;
    for (const auto& z : s.values) spectral += std::norm(z);
    spectral *= s.frequencies.step() / (2 * std::numbers::pi);
    CHECK(std::abs(spectral - energy(f)) <= 1e-10 * energy(f));
  }
}

TEST_CASE("transform matches direct sum with a nonzero center") {
  std::mt19937_64 rng(3);
  const Grid g = Grid::covering(0.75, 6.0, 0.05);
  const auto f = SampledFunction::sample(g, [](double x) {
    return Complex(std::exp(-(x - 0.75) * (x - 0.75)), std::sin(x) * std::exp(-x * x));
  });
  const auto s = forward_transform(f);
  for (std::size_t j = 0; j < s.size(); j += 7) {
    CHECK(std::abs(s.values[j] - oracle::direct_transform(f, s.xi(j))) <= 1e-12);
  }
}

TEST_CASE("box convolved with itself") {
  const double h = 0.01;
  const Grid g = Grid::covering(0.0, 4.0, h);
  auto box = SampledFunction::sample(g, [](double x) {
    return (x >= -1e-12 && x <= 1.0 + 1e-12) ? Complex(1.0) : Complex(0.0);
  });
  const auto c = convolve(box, box);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    worst = std::max(worst, std::abs(c.values[j].real() - std::max(0.0, 1.0 - std::abs(x - 1.0))));
  }
  CHECK(worst <= h + 1e-9);
  CHECK(c.values[g.nearest(1.0)].real() == doctest::Approx(1.0).epsilon(h));
}

TEST_CASE("impulse sifts") {
  std::mt19937_64 rng(11);
  const Grid g = Grid::covering(0.0, 8.0, 0.02);
  const auto f = random_packet(g, rng, 1.0);
  const std::size_t at = g.nearest(1.3);
  auto delta = SampledFunction::zeros(g);
  delta.values[at] = 1.0 / g.step();
  const auto c = convolve(f, delta);
  const auto shift = static_cast<std::ptrdiff_t>(at) - static_cast<std::ptrdiff_t>(g.size() / 2);
  const auto expected = shift_cells(f, shift);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(c.values[j] - expected.values[j]) <= 1e-10);
}

TEST_CASE("fft convolution matches direct quadrature") {
  std::mt19937_64 rng(5);
  for (const double center : {0.0, 0.5}) {
    const Grid g = Grid::covering(center, 6.0, 0.025);
    for (int trial = 0; trial < 4; ++trial) {
      const auto f = random_packet(g, rng, 0.8);
      const auto k = random_packet(g, rng, 0.5);
      const auto fast = convolve(f, k);
      CHECK(rel_l2(fast, oracle::direct_convolution(f, k)) <= 1e-8);
      CHECK(rel_l2(fast, convolve(k, f)) <= 1e-12);
    }
  }
}

TEST_CASE("convolution rejects mismatched grids and misaligned centers") {
  const Grid a = Grid::covering(0.0, 2.0, 0.1);
  const Grid b = Grid::covering(0.0, 2.0, 0.05);
  CHECK_THROWS_AS(convolve(SampledFunction::zeros(a), SampledFunction::zeros(b)), GridMismatch);
  const Grid odd = Grid::covering(0.03, 2.0, 0.1);
  CHECK_THROWS_AS(convolve(SampledFunction::zeros(odd), SampledFunction::zeros(odd)), GridMismatch);
}

TEST_CASE("convolution theorem") {
  std::mt19937_64 rng(9);
  const Grid g = Grid::covering(0.0, 16.0, 0.02);
  const auto f = random_packet(g, rng, 0.7);
  const auto k = random_packet(g, rng, 0.6);
  const auto lhs = forward_transform(convolve(f, k));
  const auto fh = forward_transform(f);
  const auto kh = forward_transform(k);
  double peak = 0.0;
  for (const auto& z : lhs.values) peak = std::max(peak, std::abs(z));
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    CHECK(std::abs(lhs.values[j] - fh.values[j] * kh.values[j]) <= 1e-9 * peak);
  }
}

TEST_CASE("norms") {
  const double h = 1e-3;
  const Grid g = Grid::covering(0.0, 20.0, h);
  const auto box = SampledFunction::sample(g, [](double x) {
    return (x >= 0.0 && x < 1.0) ? Complex(1.0) : Complex(0.0);
  });
  CHECK(std::abs(lp_norm(box, 3.0) - 1.0) <= h);
  CHECK(lp_norm(box, INFINITY) == 1.0);
  const auto e = SampledFunction::sample(g, [](double x) { return Complex(std::exp(-std::abs(x))); });
  CHECK(std::abs(lp_norm(e, 2.0) - 1.0) <= 1e-4);
  CHECK(weighted_l2(e, Weight::zeros(g)) == 0.0);
  CHECK_THROWS_AS(lp_norm(e, 0.5), std::invalid_argument);

  auto twice = e;
  for (auto& z : twice.values) z *= Complex(0.0, -2.0);
  CHECK(lp_norm(twice, 2.5) == doctest::Approx(2.0 * lp_norm(e, 2.5)).epsilon(1e-14));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> lo(g.size()), hi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    lo[j] = u(rng);
    hi[j] = lo[j] + u(rng);
  }
  CHECK(weighted_l2(e, Weight(g, lo)) <= weighted_l2(e, Weight(g, hi)));
}

TEST_CASE("weights are nonnegative") {
  const Grid g = Grid::covering(0.0, 1.0, 0.25);
  CHECK_THROWS_AS(Weight(g, std::vector<double>(g.size(), -1.0)), std::invalid_argument);
  auto f = SampledFunction::zeros(g);
  f.values[1] = -1e-14;
  f.values[2] = 1.0;
  const auto w = Weight::from_real_part(f);
  CHECK(w[1] == 0.0);
  f.values[1] = -0.5;
  CHECK_THROWS_AS(Weight::from_real_part(f), std::invalid_argument);
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(4);
  const Grid g = Grid::covering(-0.5, 2.0, 0.125);
  const auto f = random_packet(g, rng, 0.5);
  std::stringstream ss;
  csv::write_function(ss, f);
  const auto back = csv::read_function(ss);
  CHECK(back.grid.size() == g.size());
  CHECK(back.grid.center() == doctest::Approx(g.center()));
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(back.values[j] == f.values[j]);

  const auto w = Weight::sample(g, [](double x) { return x * x; });
  std::stringstream ws;
  csv::write_weight(ws, w);
  const auto wb = csv::read_weight(ws);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(wb[j] == w[j]);
}
