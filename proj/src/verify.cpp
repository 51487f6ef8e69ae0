#include "oscillab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "oscillab/csv.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/maximal.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/profiles.hpp"

namespace oscillab {

namespace {

Weight magnitude(const SampledFunction& f) {
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::abs(f.values[j]);
  return {f.grid, std::move(v)};
}

// Largest power of two not above x.
double floor_pow2(double x) {
  int e = 0;
  std::frexp(x, &e);
  return std::ldexp(1.0, e - 1);
}

double support_of(const Phase& phase, const FiniteTypeSpec& spec) {
  return spec.u ? *spec.u : resolve_support(phase, spec);
}

// (h sum_{j in [a, b)} v^q)^{1/q}; q = infinity gives the max.
double interior_norm(std::span<const double> v, std::size_t a, std::size_t b, double q, double h) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = a; j < b; ++j) m = std::max(m, v[j]);
    return m;
  }
  double s = 0.0;
  for (std::size_t j = a; j < b; ++j) s += std::pow(v[j], q);
  return std::pow(h * s, 1.0 / q);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

std::string Provenance::describe() const {
  std::ostringstream out;
  out << "experiment=" << experiment << " f=" << f << " w=" << w << " ell=" << ell
      << " lambda=" << fmt(lambda) << " p=" << p << " seed=" << seed;
  return out.str();
}

RatioSample make_ratio(double lhs, double rhs, Provenance provenance) {
  RatioSample s{lhs, rhs, 0.0, false, std::move(provenance)};
  if (rhs > 0.0) {
    s.ratio = lhs / rhs;
  } else {
    s.degenerate = true;
  }
  return s;
}

std::optional<RatioSample> max_ratio(const std::vector<RatioSample>& samples) {
  std::optional<RatioSample> best;
  for (const auto& s : samples) {
    if (s.degenerate) continue;
    if (!best || s.ratio > best->ratio) best = s;
  }
  return best;
}

PowerLaw fit_power_law(const std::vector<SweepPoint>& points) {
  if (points.size() < 3) throw InsufficientPoints("power-law fit needs at least 3 points");
  std::vector<SweepPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.lambda < b.lambda; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].lambda > 0.0) || !(sorted[i].value > 0.0)) {
      throw NonpositiveValue("power-law fit needs positive lambda and value");
    }
    if (i > 0 && sorted[i].lambda == sorted[i - 1].lambda) {
      throw InsufficientPoints("power-law fit needs distinct lambdas");
    }
  }
  const double n = static_cast<double>(sorted.size());
  double sx = 0, sy = 0;
  for (const auto& p : sorted) {
    sx += std::log(p.lambda);
    sy += std::log(p.value);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : sorted) {
    const double dx = std::log(p.lambda) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.value) - my);
  }
  PowerLaw fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : sorted) {
    const double r = std::log(p.value) - (fit.intercept + fit.slope * std::log(p.lambda));
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  return fit;
}

void fit_report(SweepReport& report) {
  std::vector<std::size_t> order(report.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return report.points[a].lambda < report.points[b].lambda; });
  std::vector<SweepPoint> points;
  std::vector<RatioSample> witnesses;
  for (auto i : order) {
    points.push_back(report.points[i]);
    if (i < report.witnesses.size()) witnesses.push_back(report.witnesses[i]);
  }
  report.points = std::move(points);
  report.witnesses = std::move(witnesses);
  report.fit.reset();
  report.flag.clear();
  try {
    report.fit = fit_power_law(report.points);
  } catch (const InsufficientPoints&) {
    report.flag = "insufficient points";
  } catch (const NonpositiveValue&) {
    report.flag = "nonpositive value";
  }
}

double experiment_step(const Phase& phase, const FiniteTypeSpec& spec, double lambda) {
  return floor_pow2(std::min(max_kernel_step(phase, spec, lambda), 1.0 / (8.0 * lambda)));
}

Weight theorem_weight(const Weight& w, int ell, double lambda) {
  return hardy_littlewood(approach_maximal(hardy_littlewood(w, 4), {ell, lambda}), 2);
}

RatioSample main_theorem_ratio(const Kernel& kernel, const SampledFunction& f, const Weight& w,
                               const Weight& dominating, Provenance provenance) {
  const auto tf = apply_T(kernel, f);
  return make_ratio(weighted_l2(tf, w), weighted_l2(f, dominating), std::move(provenance));
}

RatioSample main_theorem_ratio(const SampledFunction& f, const Weight& w, const Phase& phase,
                               const FiniteTypeSpec& spec, double lambda) {
  const auto kernel = build_kernel(phase, spec, lambda, f.grid);
  return main_theorem_ratio(kernel, f, w, theorem_weight(w, spec.ell, lambda),
                            {"main", "input", "input", spec.ell, lambda});
}

SquareFunctionRatios square_function_ratios(const SampledFunction& f, const Weight& w,
                                            const DyadicFamily& fam, Provenance provenance) {
  const auto S = square_function(dyadic_pieces(f, fam)).as_function();
  Provenance back = provenance;
  provenance.experiment += provenance.experiment.empty() ? "forward" : ":forward";
  back.experiment += back.experiment.empty() ? "backward" : ":backward";
  return {make_ratio(weighted_l2(S, w), weighted_l2(f, hardy_littlewood(w, 1)), std::move(provenance)),
          make_ratio(weighted_l2(f, w), weighted_l2(S, hardy_littlewood(w, 3)), std::move(back))};
}

RatioSample spaced_ratio(const SampledFunction& f, const Weight& w, const SpacedFamily& fam,
                         Provenance provenance) {
  const auto sp = spaced_pieces(f, fam);
  double lhs = 0.0;
  for (const auto& piece : sp.pieces) lhs += weighted_l2(piece, w);
  const Weight smoothed = convolve(magnitude(fam.kernel(f.grid)), w);
  return make_ratio(lhs, weighted_l2(f, smoothed), std::move(provenance));
}

UncertaintyRatios uncertainty_bounds_check(const SampledFunction& f, const Kernel& kernel,
                                           const Weight& w, double band, Provenance provenance) {
  if (!(band > 0.0)) throw std::invalid_argument("band must be positive");
  const Grid& g = f.grid;
  require_same_grid(g, kernel.grid(), "uncertainty_bounds_check");
  require_same_grid(g, w.grid(), "uncertainty_bounds_check");
  const auto s = forward_transform(f);
  double inside = 0.0, outside = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    (std::abs(s.xi(j)) <= band ? inside : outside) += std::norm(s.values[j]);
  }
  if (outside > 1e-8 * (inside + outside)) {
    throw SupportViolation("input spectrum leaks outside [-band, band]");
  }
  const auto psi = inverse_transform(
      spectral_from(g, [band](double xi) { return Complex(profiles::plateau(xi / band)); }));
  const auto tf = apply_T(kernel, f);
  const auto tpsi = apply_T(kernel, psi);
  const double lhs = weighted_l2(tf, w);

  const Weight abs_psi = magnitude(reflect(psi));
  const double psi_mass = lp_norm(psi, 1.0);
  const double mol_rhs = psi_mass * weighted_l2(tf, convolve(abs_psi, w));

  const Weight abs_tpsi = magnitude(reflect(tpsi));
  const double tpsi_mass = lp_norm(tpsi, 1.0);
  const double mol2_rhs = tpsi_mass * weighted_l2(f, convolve(abs_tpsi, w));

  Provenance p2 = provenance;
  provenance.experiment += provenance.experiment.empty() ? "mol" : ":mol";
  p2.experiment += p2.experiment.empty() ? "mol2" : ":mol2";
  return {make_ratio(lhs, mol_rhs, std::move(provenance)), make_ratio(lhs, mol2_rhs, std::move(p2))};
}

int max_band(double lambda, int ell, double a1) {
  const double top = 4.0 * a1 * std::pow(lambda, (ell - 1.0) / ell);
  int p = -1;
  while (std::ldexp(1.0, p + 1) < top) ++p;
  return p;
}

RatioSample envelope_check(const Phase& phase, const FiniteTypeSpec& spec, double lambda, int p,
                           double k, int N) {
  const int ell = spec.ell;
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  const auto a1 = derivative_bound(phase, spec, 1);
  if (!a1) throw OrderUnavailable("no bound for the first derivative");
  if (p < 0 || p > max_band(lambda, ell, *a1)) {
    throw BadBand("p outside [0, log2(4 A1 lambda^{(ell-1)/ell}))");
  }
  const double center = std::exp2(p * static_cast<double>(ell) / (ell - 1));
  if (!(std::abs(k) >= 0.5 * center && std::abs(k) <= 2.0 * center)) {
    throw BadBand("|k| must lie within a factor 2 of 2^{p ell/(ell-1)}");
  }
  const double L = std::exp2(-p / static_cast<double>(ell - 1)) * std::pow(lambda, 1.0 / ell);
  const double top = (std::abs(k) + 4.0) * L;
  const double step =
      std::min(experiment_step(phase, spec, lambda), floor_pow2(std::numbers::pi / (2.0 * top)));
  const double u = support_of(phase, spec);
  const double X = std::max(4.0 * u, 64.0 / L);
  const Grid g = Grid::covering(0.0, X, step);
  const auto kernel = build_kernel(phase, spec, lambda, g);
  auto spectrum = kernel_spectrum(kernel);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    spectrum.values[j] *= profiles::plateau((spectrum.xi(j) - k * L) / (2.0 * L));
  }
  const auto out = inverse_transform(spectrum);
  double sup = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    if (std::abs(x) > 0.5 * X) continue;
    sup = std::max(sup, std::abs(out.values[j]) * std::pow(1.0 + L * std::abs(x), N));
  }
  const double prefactor = std::pow(lambda, -1.0 / ell) *
                           std::exp2(-p * (ell - 2.0) / (2.0 * (ell - 1))) * L;
  return make_ratio(sup, prefactor, {"envelope", "Psi_L,k=" + fmt(k), "", ell, lambda, p});
}

RatioSample frequency_restricted_ratio(const Kernel& kernel, const SampledFunction& f,
                                       const Weight& w, int p, Provenance provenance) {
  const AnnuliIndex idx{kernel.lambda(), kernel.ell()};
  const auto fp = annuli_project(f, idx, p);
  const auto tf = apply_T(kernel, fp);
  const Weight dom =
      hardy_littlewood(approach_maximal(hardy_littlewood(w, 1), {kernel.ell(), kernel.lambda()}), 1);
  provenance.p = p;
  return make_ratio(weighted_l2(tf, w), weighted_l2(fp, dom), std::move(provenance));
}

SweepReport kernel_decay_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                               const std::vector<double>& lambdas, int N,
                               std::vector<DecayReport>& reports) {
  SweepReport report;
  report.experiment = "kernel_sup_low";
  report.ell = spec.ell;
  reports.assign(lambdas.size(), {});
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const Grid g = Grid::covering(0.0, 8.0, experiment_step(phase, spec, lambdas[i]));
    reports[i] = check_decay(build_kernel(phase, spec, lambdas[i], g), N);
  });
  for (const auto& r : reports) report.points.push_back({r.lambda, r.sup_low});
  fit_report(report);
  return report;
}

Grid maximal_grid(double lambda) {
  // Windows reach at most aperture + radius <= 2 from the point.
  return Grid::covering(0.0, corpus::kFeatureExtent + 4.5, floor_pow2(0.25 / lambda));
}

RatioSample maximal_ratio(const MaximalOperator& op, const Weight& w, double q, Provenance provenance) {
  if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
  const Grid& g = w.grid();
  const std::size_t reach = std::min(op.reach(g), g.size() / 2);
  const Weight m = op.apply(w);
  return make_ratio(interior_norm(m.values(), reach, g.size() - reach, q, g.step()),
                    interior_norm(w.values(), reach, g.size() - reach, q, g.step()), std::move(provenance));
}

SweepReport maximal_norm_sweep(int ell, const std::vector<double>& lambdas, double q,
                               const WeightCorpus& wc) {
  if (!(q >= 1.0)) throw std::invalid_argument("q must be >= 1");
  SweepReport report;
  report.experiment = "maximal_norm";
  report.ell = ell;
  report.points.resize(lambdas.size());
  report.witnesses.resize(lambdas.size());
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    const Grid g = maximal_grid(lambda);
    const MaximalOperator op{MaximalOperator::Kind::approach, 1, ell, lambda};

    struct Item {
      corpus::WeightKind kind;
      std::uint64_t seed;
    };
    std::vector<Item> items;
    for (auto kind : wc.kinds) {
      const int count = kind == corpus::WeightKind::constant ? 1 : wc.per_kind;
      for (int i = 0; i < count; ++i) items.push_back({kind, mix(wc.seed, static_cast<std::uint64_t>(kind), i)});
    }
    std::vector<RatioSample> samples(items.size());
    parallel_for(items.size(), [&](std::size_t i) {
      const Weight w = corpus::make_weight(items[i].kind, g, lambda, items[i].seed);
      samples[i] = maximal_ratio(op, w, q,
                                 {"maximal_norm", "", corpus::to_string(items[i].kind), ell, lambda, -1, items[i].seed});
    });
    const auto best = max_ratio(samples);
    report.points[li] = {lambda, best ? best->ratio : 0.0};
    if (best) report.witnesses[li] = *best;
  }
  fit_report(report);
  return report;
}

SweepReport operator_norm_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                const std::vector<double>& lambdas, const FunctionCorpus& fc) {
  SweepReport report;
  report.experiment = "operator_norm";
  report.ell = spec.ell;
  report.points.resize(lambdas.size());
  report.witnesses.resize(lambdas.size());
  const double u = support_of(phase, spec);
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    const Grid g = Grid::covering(0.0, 4.0 * u, experiment_step(phase, spec, lambda));
    const auto kernel = build_kernel(phase, spec, lambda, g);
    const std::size_t count = fc.zero ? 1 : fc.focusing.size() + static_cast<std::size_t>(fc.random);
    std::vector<RatioSample> samples(count);
    parallel_for(count, [&](std::size_t i) {
      std::string label;
      std::uint64_t seed = 0;
      SampledFunction f = SampledFunction::zeros(g);
      if (fc.zero) {
        label = "zero";
      } else if (i < fc.focusing.size()) {
        label = "focusing:" + fmt(fc.focusing[i]);
        f = corpus::focusing(kernel, g, fc.focusing[i] * u);
      } else {
        seed = mix(fc.seed, i);
        label = "trig";
        f = corpus::random_trig(g, lambda, u, seed);
      }
      const double ell = spec.ell;
      samples[i] = make_ratio(lp_norm(apply_T(kernel, f), ell), lp_norm(f, ell),
                              {"operator_norm", label, "", spec.ell, lambda, -1, seed});
    });
    const auto best = max_ratio(samples);
    report.points[li] = {lambda, best ? best->ratio : 0.0};
    report.witnesses[li] = best ? *best : samples.front();
  }
  fit_report(report);
  return report;
}

double dilation_deviation(const Weight& w, int ell, double lambda, double margin) {
  const Grid& g = w.grid();
  const double s = std::pow(lambda, 1.0 / ell);
  const Grid scaled = Grid::with_size(g.center() * s, g.step() * s, g.size());
  const SampledFunction v(scaled, w.as_function().values);
  // Matched discretization: the unit-scale sup runs over the rescaled radii.
  const auto radii = regular_radii(g, ell, lambda);
  std::vector<double> rho(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) rho[k] = radii[k] * s;
  const Weight a = regular_maximal(w.as_function(), ell, lambda, kLambdaForm, radii);
  const Weight b = regular_maximal(v, ell, 1.0, kLambdaForm, rho);
  const double c = std::pow(lambda, -2.0 / ell);
  const std::size_t m = span_cells(margin, g.step());
  double peak = 0.0;
  for (std::size_t j = m; j + m < g.size(); ++j) peak = std::max(peak, a[j]);
  double worst = 0.0;
  for (std::size_t j = m; j + m < g.size(); ++j) {
    const double top = std::max(a[j], c * b[j]);
    if (top <= 1e-12 * peak) continue;
    worst = std::max(worst, std::abs(a[j] - c * b[j]) / top);
  }
  return worst;
}

double rescaling_constant(const Weight& w, int ell, double lambda, double eps, double margin) {
  const Weight a = approach_maximal(w, {ell, eps * lambda});
  const Weight b = approach_maximal(w, {ell, lambda});
  const std::size_t m = span_cells(margin, w.grid().step());
  double c = 0.0;
  for (std::size_t j = m; j + m < w.size(); ++j) {
    if (a[j] == 0.0) continue;
    if (b[j] == 0.0) return std::numeric_limits<double>::infinity();
    c = std::max(c, a[j] / b[j]);
  }
  return c;
}

double atom_norm(const Grid& g, int ell, double length) {
  return lp_norm(regular_maximal(corpus::atom(g, length), ell, 1.0, 1.0), 1.0);
}

std::vector<RatioSample> main_theorem_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                            double lambda, int weights, int per_weight,
                                            std::uint64_t seed) {
  const double u = support_of(phase, spec);
  const Grid g = Grid::covering(0.0, corpus::kFeatureExtent + u + 1.0, experiment_step(phase, spec, lambda));
  const auto kernel = build_kernel(phase, spec, lambda, g);
  const auto W = static_cast<std::size_t>(weights), F = static_cast<std::size_t>(per_weight);
  std::vector<RatioSample> samples(W * F);
  parallel_for(W, [&](std::size_t i) {
    const std::uint64_t ws = mix(seed, i);
    const Weight w = corpus::make_weight(corpus::WeightKind::mixed, g, lambda, ws);
    const Weight dom = theorem_weight(w, spec.ell, lambda);
    for (std::size_t j = 0; j < F; ++j) {
      const std::uint64_t fs = mix(seed, i, j + 1);
      // Every fourth input focuses at the origin; the rest are random.
      const bool focus = j % 4 == 3;
      const auto f = focus ? corpus::focusing(kernel, g, 0.5 * u)
                           : corpus::random_trig(g, lambda, 2.0, fs);
      samples[i * F + j] = main_theorem_ratio(kernel, f, w, dom,
                                              {"main", focus ? "focusing" : "trig:" + std::to_string(fs),
                                               "mixed:" + std::to_string(ws), spec.ell, lambda, -1, seed});
    }
  });
  return samples;
}

std::vector<RatioSample> dyadic_sweep(const DyadicFamily& fam, int count, std::uint64_t seed) {
  const double lo = fam.covered_low(), hi = fam.covered_high();
  const double h = floor_pow2(std::numbers::pi / (1.5 * hi));
  const double extent = std::max(16.0, 16.0 / lo);
  const Grid g = Grid::covering(0.0, extent, h);
  std::vector<RatioSample> out(2 * static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const std::uint64_t s = mix(seed, i);
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    double a = std::exp(u(rng)), b = std::exp(u(rng));
    if (a > b) std::swap(a, b);
    b = std::min(hi, std::max(b, a + 0.5 * lo));
    const auto f = corpus::band_limited(g, a, b, 1.0, s);
    const Weight w = corpus::make_weight(corpus::WeightKind::mixed, g, hi, s);
    const auto r = square_function_ratios(f, w, fam,
                                          {"dyadic", "band:" + fmt(a) + ":" + fmt(b), "mixed", 0, 0.0, -1, s});
    out[2 * i] = r.forward;
    out[2 * i + 1] = r.backward;
  });
  return out;
}

std::vector<RatioSample> spaced_sweep(const SpacedFamily& fam, int count, std::uint64_t seed) {
  const double L = fam.L;
  const double top = 16.0 * std::max(L, 1.0);
  const double h = floor_pow2(std::numbers::pi / (2.0 * top));
  const Grid g = Grid::covering(0.0, std::max(16.0, 16.0 / L), h);
  std::vector<RatioSample> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t i) {
    const std::uint64_t s = mix(seed, i);
    const auto f = corpus::band_limited(g, 0.0, top, 1.0, s);
    const Weight w = corpus::make_weight(corpus::WeightKind::mixed, g, top, s);
    out[i] = spaced_ratio(f, w, fam, {"spaced", "band", "mixed", 0, L, -1, s});
  });
  return out;
}

std::vector<RatioSample> uncertainty_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                           double lambda, double band, int count,
                                           std::uint64_t seed) {
  const double u = support_of(phase, spec);
  const double step = std::min(experiment_step(phase, spec, lambda), floor_pow2(std::numbers::pi / (4.0 * band)));
  const Grid g = Grid::covering(0.0, corpus::kFeatureExtent + u + std::max(2.0, 64.0 / band), step);
  const auto kernel = build_kernel(phase, spec, lambda, g);
  std::vector<RatioSample> out(2 * static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const std::uint64_t s = mix(seed, i);
    const auto f = corpus::band_limited(g, 0.0, band, 1.0, s);
    const Weight w = corpus::make_weight(corpus::WeightKind::mixed, g, lambda, s);
    const auto r = uncertainty_bounds_check(f, kernel, w, band,
                                            {"uncertainty", "band:" + fmt(band), "mixed", spec.ell, lambda, -1, s});
    out[2 * i] = r.mol;
    out[2 * i + 1] = r.mol2;
  });
  return out;
}

ChainCheck weight_chain_check(int ell, double lambda, int p, double a1, int count, std::uint64_t seed) {
  const double S = std::ldexp(std::pow(lambda, 1.0 / ell), p);
  const double L = std::exp2(-p / static_cast<double>(ell - 1)) * std::pow(lambda, 1.0 / ell);
  const double h = floor_pow2(std::numbers::pi / (8.0 * S));
  const Grid g = Grid::covering(0.0, corpus::kFeatureExtent + std::max(4.0, 64.0 / L), h);
  std::vector<ChainCheck> checks(static_cast<std::size_t>(count));
  parallel_for(checks.size(), [&](std::size_t i) {
    const Weight w = corpus::make_weight(corpus::WeightKind::mixed, g, lambda, mix(seed, i));
    const auto d = dominating_weights(w, p, lambda, ell, a1);
    ChainCheck c{p, d.constant, 0.0, true};
    const double floor = 1e-9 * d.w2.max();
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (d.w1[j] > d.w2[j]) c.ordered = false;
      if (d.w2[j] > floor) c.worst = std::max(c.worst, d.w2[j] / (d.constant * d.w3[j]));
    }
    checks[i] = c;
  });
  ChainCheck total{p, checks.empty() ? 0.0 : checks.front().constant, 0.0, true};
  for (const auto& c : checks) {
    total.worst = std::max(total.worst, c.worst);
    total.ordered = total.ordered && c.ordered;
  }
  return total;
}

std::string results_csv(const std::vector<RatioSample>& samples) {
  std::ostringstream out;
  out << "experiment,ell,lambda,p,seed,lhs,rhs,ratio\n";
  for (const auto& s : samples) {
    const auto& pv = s.provenance;
    out << pv.experiment << ',' << pv.ell << ',' << fmt(pv.lambda) << ',' << pv.p << ',' << pv.seed << ','
        << fmt(s.lhs) << ',' << fmt(s.rhs) << ',' << fmt(s.ratio) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepReport>& reports) {
  std::ostringstream out;
  out << "experiment,ell,lambda,value\n";
  for (const auto& r : reports) {
    for (const auto& p : r.points) out << r.experiment << ',' << r.ell << ',' << fmt(p.lambda) << ',' << fmt(p.value) << '\n';
  }
  return out.str();
}

}  // namespace oscillab
