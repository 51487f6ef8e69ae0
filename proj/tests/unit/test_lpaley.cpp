#include <doctest.h>

#include <cmath>
#include <random>

#include "oscillab/errors.hpp"
#include "oscillab/lpaley.hpp"
#include "oscillab/profiles.hpp"

using namespace oscillab;

namespace {

// Smooth spectrum supported in lo <= |xi| <= hi with a random phase per side.
SampledFunction band_limited(const Grid& g, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  const double a = u(rng), b = u(rng);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  return inverse_transform(spectral_from(g, [=](double xi) {
    const double m = profiles::bump((std::abs(xi) - mid) / half);
    return std::polar(m, xi > 0 ? a + 0.3 * xi : b - 0.1 * xi);
  }));
}

double rel_l2(const SampledFunction& a, const SampledFunction& b) {
  double num = 0, den = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    num += std::norm(a.values[j] - b.values[j]);
    den += std::norm(b.values[j]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("dyadic bands telescope to one on the covered range") {
  const DyadicFamily fam{-2, 5};
  for (double xi = 0; xi < 100; xi += 0.0137) {
    const double t = fam.total(xi);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0 + 1e-15);
    if (xi >= fam.covered_low() && xi <= fam.covered_high()) CHECK(std::abs(t - 1.0) <= 1e-12);
    CHECK(fam.total(-xi) == t);
  }
}

TEST_CASE("dyadic pieces reconstruct a band-limited input") {
  const auto g = Grid::covering(0.0, 64.0, 1.0 / 64);
  const DyadicFamily fam{-1, 6};
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto f = band_limited(g, 0.6, 60.0, seed);
    const auto pieces = dyadic_pieces(f, fam);
    REQUIRE(pieces.size() == 8);
    auto sum = SampledFunction::zeros(g);
    for (const auto& p : pieces) {
      for (std::size_t j = 0; j < g.size(); ++j) sum.values[j] += p.values[j];
    }
    CHECK(rel_l2(sum, f) <= 1e-8);

    const auto S = square_function(pieces);
    const double ratio = weighted_l2(S.as_function(), Weight::constant(g, 1.0)) / energy(f);
    CHECK(ratio >= 0.5 - 1e-9);
    CHECK(ratio <= 1.0 + 1e-9);
  }
}

TEST_CASE("a narrow band meets at most two dyadic pieces") {
  const auto g = Grid::covering(0.0, 64.0, 1.0 / 64);
  const DyadicFamily fam{0, 6};
  const auto f = band_limited(g, 5.5, 6.5, 9);
  int active = 0;
  for (const auto& p : dyadic_pieces(f, fam)) {
    if (lp_norm(p, 2.0) > 1e-12 * lp_norm(f, 2.0)) ++active;
  }
  CHECK(active >= 1);
  CHECK(active <= 2);
}

TEST_CASE("dyadic pieces reject energy outside the bands") {
  const auto g = Grid::covering(0.0, 32.0, 1.0 / 32);
  const auto f = SampledFunction::sample(g, [](double x) { return Complex(std::exp(-x * x)); });
  CHECK_THROWS_AS(dyadic_pieces(f, DyadicFamily{0, 4}), CoverageGap);
}

TEST_CASE("spaced windows form a partition of unity") {
  for (double L : {0.25, 1.0, 3.7}) {
    const SpacedFamily fam{L};
    for (double xi = -20 * L; xi < 20 * L; xi += 0.0311 * L) {
      double s = 0;
      for (int k = -30; k <= 30; ++k) s += fam.window(xi - k * L);
      CHECK(std::abs(s - 1.0) <= 1e-12);
      CHECK(fam.window(xi) >= 0.0);
      if (std::abs(xi) >= 2 * L) CHECK(fam.window(xi) == 0.0);
    }
  }
}

TEST_CASE("spaced pieces reconstruct the input") {
  const auto g = Grid::covering(0.0, 64.0, 1.0 / 64);
  const auto f = band_limited(g, 1.0, 30.0, 3);
  const auto sp = spaced_pieces(f, SpacedFamily{2.0});
  REQUIRE(!sp.k.empty());
  auto sum = SampledFunction::zeros(g);
  for (const auto& p : sp.pieces) {
    for (std::size_t j = 0; j < g.size(); ++j) sum.values[j] += p.values[j];
  }
  CHECK(rel_l2(sum, f) <= 1e-10);
  CHECK(sp.k.front() >= -17);
  CHECK(sp.k.back() <= 17);
}

TEST_CASE("spaced kernel decay constant is scale invariant") {
  const auto g = Grid::covering(0.0, 256.0, 1.0 / 32);
  for (int N : {1, 2, 4}) {
    const double c1 = spaced_decay_constant(SpacedFamily{1.0}, g, N);
    const double c4 = spaced_decay_constant(SpacedFamily{4.0}, g, N);
    CHECK(std::isfinite(c1));
    CHECK(c4 == doctest::Approx(c1).epsilon(0.02));
  }
}

TEST_CASE("annuli cover every frequency at most four times") {
  for (double lambda : {1.0, 50.0, 4096.0}) {
    for (int ell : {2, 3, 5}) {
      const AnnuliIndex idx{lambda, ell};
      for (double t = -4; t < 12; t += 0.01) {
        const double xi = idx.base() * std::exp2(t);
        const int m = idx.multiplicity(xi);
        CHECK(m >= 1);
        CHECK(m <= 4);
      }
      CHECK(idx.multiplicity(0.0) == 1);
    }
  }
}

TEST_CASE("annulus projection keeps the matching spectrum") {
  const auto g = Grid::covering(0.0, 32.0, 1.0 / 64);
  const AnnuliIndex idx{64.0, 3};
  const auto f = band_limited(g, 5.0, 7.0, 5);
  CHECK(rel_l2(annuli_project(f, idx, 1), f) <= 1e-12);
  CHECK(lp_norm(annuli_project(f, idx, 4), 2.0) <= 1e-12 * lp_norm(f, 2.0));
  CHECK_THROWS_AS(annuli_project(f, idx, -1), std::invalid_argument);
}

TEST_CASE("dominating weights form an increasing chain") {
  const auto g = Grid::covering(0.0, 64.0, 1.0 / 64);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(g.size(), 0.0);
  for (int f = 0; f < 10; ++f) {
    const double c = 30 * (2 * u(rng) - 1), wd = 0.05 + u(rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.x(j) - c) < wd) v[j] += 1 + 4 * u(rng);
    }
  }
  const Weight w(g, v);
  for (int p : {0, 1, 2}) {
    const auto d = dominating_weights(w, p, 27.0, 3, 1.0);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(d.w1[j] <= d.w2[j]);
    const double floor = 1e-9 * d.w2.max();
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (d.w2[j] > floor) CHECK(d.w2[j] <= d.constant * d.w3[j] * (1 + 1e-9));
    }
    CHECK(d.phi_mass >= 1.0);
    CHECK(d.constant > 0.0);
  }
}

TEST_CASE("dominating weights of a constant are constant inside") {
  const auto g = Grid::covering(0.0, 64.0, 1.0 / 64);
  const auto d = dominating_weights(Weight::constant(g, 2.0), 1, 8.0, 2, 1.0);
  const double expect = 2.0 * d.phi_mass * d.phi_mass;
  for (double x : {-8.0, 0.0, 5.0}) {
    CHECK(d.w1[g.nearest(x)] == doctest::Approx(expect).epsilon(1e-9));
    CHECK(d.w2[g.nearest(x)] == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("dominating weights validate the band and resolution") {
  const auto g = Grid::covering(0.0, 16.0, 1.0 / 16);
  const auto w = Weight::constant(g, 1.0);
  CHECK_THROWS_AS(dominating_weights(w, -1, 8.0, 2, 1.0), BadBand);
  CHECK_THROWS_AS(dominating_weights(w, 4, 8.0, 2, 1.0), BadBand);
  CHECK_THROWS_AS(dominating_weights(w, 3, 8.0, 2, 1.0), UnderResolved);
}
