#include "oscillab/corpus.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "oscillab/profiles.hpp"

namespace oscillab::corpus {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

void add_feature(std::vector<double>& v, const Grid& g, WeightKind kind, double lambda,
                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double extent = std::min(kFeatureExtent, 0.9 * g.half_width());
  const double c = g.center() + extent * (2.0 * unit(rng) - 1.0);
  const double amp = 0.1 + 0.9 * unit(rng);
  const double width = log_uniform(rng, std::max(1.0 / lambda, 2.0 * g.step()), 1.0);
  switch (kind) {
    case WeightKind::spike:
      v[g.nearest(c)] += amp;
      return;
    case WeightKind::bump:
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += amp * profiles::bump((g.x(j) - c) / width) * std::exp(1.0);
      return;
    case WeightKind::block:
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (std::abs(g.x(j) - c) <= 0.5 * width) v[j] += amp;
      }
      return;
    default:
      throw std::logic_error("not a single feature kind");
  }
}

}  // namespace

WeightKind parse_weight_kind(const std::string& name) {
  if (name == "const" || name == "constant") return WeightKind::constant;
  if (name == "bump") return WeightKind::bump;
  if (name == "spike") return WeightKind::spike;
  if (name == "block") return WeightKind::block;
  if (name == "mixed" || name == "random") return WeightKind::mixed;
  throw std::invalid_argument("unknown weight kind '" + name + "'");
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant: return "const";
    case WeightKind::bump: return "bump";
    case WeightKind::spike: return "spike";
    case WeightKind::block: return "block";
    case WeightKind::mixed: return "mixed";
  }
  return "?";
}

Weight make_weight(WeightKind kind, const Grid& g, double lambda, std::uint64_t seed) {
  if (kind == WeightKind::constant) return Weight::constant(g, 1.0);
  std::mt19937_64 rng(seed);
  std::vector<double> v(g.size(), 0.0);
  if (kind != WeightKind::mixed) {
    add_feature(v, g, kind, lambda, rng);
  } else {
    const int count = std::uniform_int_distribution<int>(3, 8)(rng);
    for (int i = 0; i < count; ++i) {
      add_feature(v, g, static_cast<WeightKind>(1 + i % 3), lambda, rng);
    }
  }
  return {g, std::move(v)};
}

SampledFunction random_trig(const Grid& g, double max_frequency, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::bernoulli_distribution sign;
  const int terms = std::uniform_int_distribution<int>(4, 8)(rng);
  std::vector<double> xi(terms);
  std::vector<Complex> a(terms);
  for (int m = 0; m < terms; ++m) {
    xi[m] = log_uniform(rng, 1.0, std::max(max_frequency, 1.0)) * (sign(rng) ? 1.0 : -1.0);
    a[m] = {gauss(rng), gauss(rng)};
  }
  return SampledFunction::sample(g, [&](double x) {
    const double env = profiles::bump(x / radius);
    if (env == 0.0) return Complex(0.0);
    Complex s = 0.0;
    for (int m = 0; m < terms; ++m) s += a[m] * std::polar(1.0, xi[m] * x);
    return env * s;
  });
}

SampledFunction band_limited(const Grid& g, double lo, double hi, double spread, std::uint64_t seed) {
  if (!(hi > lo) || lo < 0.0) throw std::invalid_argument("band needs 0 <= lo < hi");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> place(-spread, spread);
  const int packets = std::uniform_int_distribution<int>(2, 5)(rng);
  std::vector<double> at(packets);
  std::vector<Complex> c(packets);
  for (int j = 0; j < packets; ++j) {
    at[j] = place(rng);
    c[j] = {gauss(rng), gauss(rng)};
  }
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  return inverse_transform(spectral_from(g, [&](double xi) {
    const double m = profiles::bump((std::abs(xi) - mid) / half);
    if (m == 0.0) return Complex(0.0);
    Complex s = 0.0;
    for (int j = 0; j < packets; ++j) s += c[j] * std::polar(1.0, -xi * at[j]);
    return m * s;
  }));
}

SampledFunction focusing(const Kernel& kernel, const Grid& g, double delta) {
  const double lambda = kernel.lambda();
  const Phase& phi = kernel.phase();
  return SampledFunction::sample(g, [&](double y) {
    const double env = profiles::bump(y / delta);
    if (env == 0.0) return Complex(0.0);
    return std::polar(env, -lambda * phi.eval(0, -y));
  });
}

SampledFunction atom(const Grid& g, double length) {
  if (length < 2.0 * g.step() * (1.0 - 1e-12)) throw std::invalid_argument("atom shorter than two grid cells");
  const auto cells = static_cast<std::ptrdiff_t>(std::llround(0.5 * length / g.step()));
  const auto mid = static_cast<std::ptrdiff_t>(g.nearest(0.0));
  auto f = SampledFunction::zeros(g);
  const double height = 1.0 / (2.0 * static_cast<double>(cells) * g.step());
  for (std::ptrdiff_t d = 0; d < cells; ++d) {
    const std::ptrdiff_t left = mid - 1 - d, right = mid + d;
    if (left < 0 || right >= static_cast<std::ptrdiff_t>(g.size())) {
      throw std::invalid_argument("atom does not fit on the grid");
    }
    f.values[static_cast<std::size_t>(left)] = height;
    f.values[static_cast<std::size_t>(right)] = -height;
  }
  return f;
}

}  // namespace oscillab::corpus
