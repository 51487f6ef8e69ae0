#include "oscillab/lpaley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "oscillab/errors.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/profiles.hpp"
#include "oscillab/sliding.hpp"

namespace oscillab {

namespace {

std::vector<double> magnitudes(const SampledFunction& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::abs(f.values[j]);
  return v;
}

SampledFunction multiply(const SpectralFunction& s, const std::function<double(double)>& m) {
  SpectralFunction out = s;
  for (std::size_t j = 0; j < out.size(); ++j) out.values[j] *= m(out.xi(j));
  return inverse_transform(out);
}

}  // namespace

double DyadicFamily::chi(double xi) { return profiles::plateau(xi); }

double DyadicFamily::profile(double xi) { return chi(xi) - chi(2.0 * xi); }

double DyadicFamily::band(int k, double xi) const { return profile(std::ldexp(xi, -k)); }

double DyadicFamily::covered_low() const { return std::ldexp(1.0, kmin); }

double DyadicFamily::covered_high() const { return std::ldexp(1.0, kmax); }

double DyadicFamily::total(double xi) const {
  double s = 0.0;
  for (int k = kmin; k <= kmax; ++k) s += band(k, xi);
  return s;
}

std::vector<SampledFunction> dyadic_pieces(const SampledFunction& f, const DyadicFamily& fam) {
  if (fam.kmin > fam.kmax) throw std::invalid_argument("dyadic family needs kmin <= kmax");
  const auto s = forward_transform(f);
  double inside = 0.0, outside = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double xi = std::abs(s.xi(j));
    const double e = std::norm(s.values[j]);
    if (xi >= fam.covered_low() && xi <= fam.covered_high()) {
      inside += e;
    } else {
      outside += e;
    }
  }
  if (outside > 1e-8 * (inside + outside)) {
    throw CoverageGap("fraction " + std::to_string(outside / (inside + outside)) +
                      " of the energy lies outside the dyadic bands");
  }
  const auto count = static_cast<std::size_t>(fam.kmax - fam.kmin + 1);
  std::vector<SampledFunction> pieces(count, SampledFunction::zeros(f.grid));
  parallel_for(count, [&](std::size_t i) {
    const int k = fam.kmin + static_cast<int>(i);
    pieces[i] = multiply(s, [&](double xi) { return fam.band(k, xi); });
  });
  return pieces;
}

Weight square_function(const std::vector<SampledFunction>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("square function needs at least one piece");
  const Grid& g = pieces.front().grid;
  std::vector<double> acc(g.size(), 0.0);
  for (const auto& p : pieces) {
    require_same_grid(p.grid, g, "square_function");
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += std::norm(p.values[j]);
  }
  for (double& v : acc) v = std::sqrt(v);
  return {g, std::move(acc)};
}

double SpacedFamily::eta(double t) { return profiles::bump(0.5 * t); }

double SpacedFamily::window(double xi) const {
  const double t = xi / L;
  const double base = std::floor(t);
  double denom = 0.0;
  for (int j = -2; j <= 3; ++j) denom += eta(t - (base + j));
  return eta(t) / denom;
}

SampledFunction SpacedFamily::kernel(const Grid& g) const {
  return inverse_transform(spectral_from(g, [this](double xi) { return Complex(window(xi)); }));
}

SpacedPieces spaced_pieces(const SampledFunction& f, const SpacedFamily& fam) {
  if (!(fam.L > 0.0)) throw std::invalid_argument("spacing must be positive");
  const auto s = forward_transform(f);
  double peak = 0.0;
  for (const auto& z : s.values) peak = std::max(peak, std::abs(z));
  SpacedPieces out;
  if (peak == 0.0) return out;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (std::abs(s.values[j]) > 1e-15 * peak) {
      lo = std::min(lo, s.xi(j));
      hi = std::max(hi, s.xi(j));
    }
  }
  const int k0 = static_cast<int>(std::ceil(lo / fam.L - 2.0));
  const int k1 = static_cast<int>(std::floor(hi / fam.L + 2.0));
  for (int k = k0; k <= k1; ++k) out.k.push_back(k);
  out.pieces.assign(out.k.size(), SampledFunction::zeros(f.grid));
  parallel_for(out.k.size(), [&](std::size_t i) {
    const double shift = out.k[i] * fam.L;
    out.pieces[i] = multiply(s, [&](double xi) { return fam.window(xi - shift); });
  });
  return out;
}

double spaced_decay_constant(const SpacedFamily& fam, const Grid& g, int N) {
  const auto w = fam.kernel(g);
  double c = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    c = std::max(c, std::abs(w.values[j]) * std::pow(1.0 + fam.L * std::abs(x), N) / fam.L);
  }
  return c;
}

double AnnuliIndex::base() const { return std::pow(lambda, 1.0 / ell); }

bool AnnuliIndex::contains(int p, double xi) const {
  const double a = std::abs(xi);
  const double b = base();
  if (p == 0) return a <= b;
  if (p < 0) return false;
  return a > std::ldexp(b, p - 3) && a <= std::ldexp(b, p + 1);
}

int AnnuliIndex::multiplicity(double xi) const {
  const double a = std::abs(xi);
  int top = 1;
  while (std::ldexp(base(), top - 3) < a) ++top;
  int count = 0;
  for (int p = 0; p <= top; ++p) count += contains(p, xi) ? 1 : 0;
  return count;
}

SampledFunction annuli_project(const SampledFunction& f, const AnnuliIndex& idx, int p) {
  if (p < 0) throw std::invalid_argument("annulus index must be >= 0");
  return multiply(forward_transform(f), [&](double xi) { return idx.contains(p, xi) ? 1.0 : 0.0; });
}

DominatingWeights dominating_weights(const Weight& w, int p, double lambda, int ell, double A1) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2");
  if (!(lambda >= 1.0) || !(A1 > 0.0)) throw std::invalid_argument("need lambda >= 1 and A1 > 0");
  const double top = 4.0 * A1 * std::pow(lambda, (ell - 1.0) / ell);
  if (p < 0 || !(std::ldexp(1.0, p) < top)) {
    throw BadBand("2^p must lie in [1, 4 A1 lambda^{(ell-1)/ell})");
  }
  const Grid& g = w.grid();
  const double h = g.step();
  const double S = std::ldexp(std::pow(lambda, 1.0 / ell), p);
  if (8.0 * S > std::numbers::pi / h) {
    throw UnderResolved("mollifier spectrum exceeds the Nyquist frequency", std::numbers::pi / (8.0 * S));
  }

  DominatingWeights d{w, w, w, S, 0.0, 0.0, 0.0, 0.0, SampledFunction::zeros(g), SampledFunction::zeros(g)};
  d.phi = inverse_transform(spectral_from(g, [S](double xi) { return Complex(profiles::plateau(xi / (4.0 * S))); }));
  const Weight abs_phi(g, magnitudes(d.phi));
  d.phi_mass = h * std::accumulate(abs_phi.values().begin(), abs_phi.values().end(), 0.0);
  d.w1 = convolve(abs_phi, w).scaled(d.phi_mass);

  d.L = std::pow(2.0, -static_cast<double>(p) / (ell - 1)) * std::pow(lambda, 1.0 / ell);
  d.radius = std::pow(4.0 * A1, -1.0 / (ell - 1)) / d.L;
  const std::size_t cells = static_cast<std::size_t>(std::floor(d.radius / h * (1.0 + 1e-12)));
  d.w2 = Weight(g, sliding_max(d.w1.values(), cells));

  const double L = d.L;
  const auto root = inverse_transform(spectral_from(g, [L](double xi) { return Complex(profiles::bump(2.0 * xi / L)); }));
  std::vector<double> theta(g.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double r = root.values[j].real();
    theta[j] = 2.0 * std::numbers::pi * r * r / L;
  }
  const Weight theta_w(g, theta);
  d.theta = theta_w.as_function();
  d.w3 = convolve(theta_w, d.w2);

  const std::size_t zero = g.nearest(0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k <= cells && zero + k < g.size(); ++k) mass += theta[zero + k];
  d.constant = 1.0 / (h * mass);
  return d;
}

}  // namespace oscillab
