#include "oscillab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oscillab/csv.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/profiles.hpp"

namespace oscillab {

namespace {

double support_halfwidth(const Phase& phase, const FiniteTypeSpec& spec) {
  return spec.u ? *spec.u : resolve_support(phase, spec);
}

double first_derivative_bound(const Phase& normal, const FiniteTypeSpec& spec, double u) {
  constexpr int kSamples = 1024;
  double m = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    m = std::max(m, std::abs(normal.eval(1, -u + 2.0 * u * i / kSamples)));
  }
  if (spec.bounds.size() > 1) m = std::min(m, spec.bounds[1]);
  return m;
}

double step_limit(double lambda, double u, double a1) {
  double limit = std::min(1.0 / (8.0 * lambda), u / 64.0);
  if (a1 > 0.0) limit = std::min(limit, std::numbers::pi / (4.0 * lambda * a1));
  return limit;
}

}  // namespace

double Cutoff::operator()(double x) const { return profiles::bump((x - center) / u); }

double max_kernel_step(const Phase& phase, const FiniteTypeSpec& spec, double lambda) {
  const double u = support_halfwidth(phase, spec);
  return step_limit(lambda, u, first_derivative_bound(normalized(phase, spec), spec, u));
}

Kernel build_kernel(const Phase& phase, const FiniteTypeSpec& spec, double lambda,
                    const Grid& grid, double position) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const double u = support_halfwidth(phase, spec);
  const Phase normal = normalized(phase, spec);
  const double a1 = first_derivative_bound(normal, spec, u);
  const double limit = step_limit(lambda, u, a1);
  if (grid.step() > limit * (1.0 + 1e-12)) {
    throw UnderResolved("grid step " + csv::format_double(grid.step()) +
                            " too coarse for lambda " + csv::format_double(lambda),
                        limit);
  }
  const Cutoff cutoff{0.0, u};
  auto samples = SampledFunction::sample(grid, [&](double x) {
    const double t = x - position;
    const double psi = cutoff(t);
    if (psi == 0.0) return Complex(0.0);
    return std::polar(psi, lambda * normal.eval(0, t));
  });
  return Kernel(normal, spec, lambda, cutoff, std::move(samples), a1);
}

SampledFunction apply_T(const Kernel& kernel, const SampledFunction& f, ApplyMode mode) {
  require_same_grid(f.grid, kernel.grid(), "apply_T");
  if (mode == ApplyMode::fft) return convolve(f, kernel.samples());

  const auto& g = f.grid;
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const double ratio = g.center() / g.step();
  const auto s = static_cast<std::ptrdiff_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(s)) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw GridMismatch("quadrature requires the grid center to be a multiple of the step");
  }
  const auto& k = kernel.samples().values;
  std::ptrdiff_t lo = n, hi = -1;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (k[static_cast<std::size_t>(i)] != Complex(0.0)) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  std::vector<Complex> out(g.size());
  // Kernel index i holds offset d = i - n/2 + s cells.
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    Complex acc = 0.0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      const std::ptrdiff_t src = j - (i - n / 2 + s);
      if (src < 0 || src >= n) continue;
      acc += k[static_cast<std::size_t>(i)] * f.values[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(j)] = g.step() * acc;
  }
  return {g, std::move(out)};
}

SpectralFunction kernel_spectrum(const Kernel& kernel) { return forward_transform(kernel.samples()); }

DecayReport check_decay(const Kernel& kernel, int N) {
  return check_decay(kernel, kernel_spectrum(kernel), N);
}

DecayReport check_decay(const Kernel& kernel, const SpectralFunction& spectrum, int N) {
  const double lambda = kernel.lambda();
  const int ell = kernel.ell();
  const double nyquist = std::numbers::pi / kernel.grid().step();
  const double far_start = 2.0 * kernel.a1() * lambda;
  if (nyquist < 2.0 * far_start) {
    throw UnderResolved("spectrum does not reach 4 A1 lambda",
                        std::numbers::pi / (4.0 * kernel.a1() * lambda));
  }
  const double low = std::pow(lambda, 1.0 / ell);
  const double scale = std::pow(lambda, 1.0 / (2.0 * (ell - 1)));
  const double expo = (ell - 2) / (2.0 * (ell - 1));

  DecayReport r;
  r.lambda = lambda;
  r.ell = ell;
  r.order = N;
  const int annuli = std::max(1, static_cast<int>(std::ceil(std::log2(lambda / low) - 1e-12)));
  r.tail_constants.assign(static_cast<std::size_t>(annuli), 0.0);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double xi = std::abs(spectrum.xi(j));
    const double mag = std::abs(spectrum.values[j]);
    if (xi <= low) {
      r.sup_low = std::max(r.sup_low, mag);
    } else if (xi < lambda) {
      const auto a = std::clamp(static_cast<int>(std::ceil(std::log2(xi / low))) - 1, 0, annuli - 1);
      auto& slot = r.tail_constants[static_cast<std::size_t>(a)];
      slot = std::max(slot, mag * scale * std::pow(xi, expo));
    }
    if (xi >= far_start && xi <= nyquist) {
      r.far_field = std::max(r.far_field, mag * std::pow(xi, N));
    }
  }
  for (double c : r.tail_constants) r.tail_max = std::max(r.tail_max, c);
  return r;
}

std::string decay_csv(const std::vector<DecayReport>& reports) {
  std::ostringstream os;
  os << "lambda,ell,sup_low,tail_max,far_field\n";
  for (const auto& r : reports) {
    os << csv::format_double(r.lambda) << ',' << r.ell << ',' << csv::format_double(r.sup_low) << ','
       << csv::format_double(r.tail_max) << ',' << csv::format_double(r.far_field) << '\n';
  }
  return os.str();
}

}  // namespace oscillab
