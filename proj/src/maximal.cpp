#include "oscillab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "oscillab/csv.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/sliding.hpp"
#include "oscillab/windows.hpp"

namespace oscillab {

namespace {

// 2^{-j/2}, exact for even j.
double half_octave(int j) {
  const double base = std::ldexp(1.0, -(j / 2));
  return (j % 2 == 0) ? base : base * std::sqrt(0.5);
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<double> max_over(std::vector<std::vector<double>>& per_radius, std::size_t n) {
  std::vector<double> out(n, 0.0);
  for (const auto& v : per_radius) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], v[i]);
  }
  return out;
}

// sup over radii r and |y - x| <= aperture(r) of factor(r) * I(y, r).
template <class Factor, class Aperture>
Weight window_sup(const Weight& w, const std::vector<double>& radii, Factor factor, Aperture aperture) {
  const WindowSums sums(w);
  const double h = w.grid().step();
  std::vector<std::vector<double>> per(radii.size());
  parallel_for(radii.size(), [&](std::size_t k) {
    const double r = radii[k];
    auto best = sliding_max(sums.integrals(r), span_cells(aperture(r), h));
    const double p = factor(r);
    for (double& v : best) v *= p;
    per[k] = std::move(best);
  });
  return {w.grid(), max_over(per, w.size())};
}

// |P_r * f| at every grid point, summed over d = -D..D in order.
std::vector<double> bump_average(const SampledFunction& f, double r, const BumpProfile& P) {
  const double h = f.grid.step();
  const auto D = static_cast<long>(span_cells(2.0 * r, h));
  std::vector<double> taps(static_cast<std::size_t>(2 * D + 1));
  for (long d = -D; d <= D; ++d) taps[static_cast<std::size_t>(d + D)] = P(static_cast<double>(d) * h / r);
  const auto n = static_cast<long>(f.size());
  const double scale = h / r;
  std::vector<double> out(f.size());
  for (long i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (long d = -D; d <= D; ++d) {
      const long src = i - d;
      if (src < 0 || src >= n) continue;
      acc += taps[static_cast<std::size_t>(d + D)] * f.values[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(i)] = std::abs(scale * acc);
  }
  return out;
}

}  // namespace

double ApproachRegion::r_max() const { return std::pow(lambda, -1.0 / ell); }

double ApproachRegion::aperture(double r) const { return std::pow(lambda * r, -1.0 / (ell - 1)); }

std::vector<double> ApproachRegion::radii(double h) const {
  if (degenerate()) return {1.0};
  const double lo = r_min();
  const double hi = r_max();
  std::vector<double> out;
  for (int j = 1;; ++j) {
    const double r = lo / half_octave(j);
    if (r > hi) break;
    out.push_back(r);
  }
  for (int k = 2; k <= ell; ++k) out.push_back(std::pow(lambda, -1.0 / k));
  out.push_back(lo + h);
  std::erase_if(out, [&](double r) { return !(r > lo && r <= hi); });
  sort_unique(out);
  return out;
}

double BumpProfile::operator()(double t) const {
  const double s = 1.0 - 0.25 * t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

double BumpProfile::c_p() const { return (*this)(1.0); }

double BumpProfile::discrete_mass(double r, double h) const {
  const auto D = static_cast<long>(span_cells(2.0 * r, h));
  double sum = 0.0;
  for (long d = -D; d <= D; ++d) sum += (*this)(static_cast<double>(d) * h / r);
  return h / r * sum;
}

std::size_t span_cells(double x, double h) {
  const double cells = std::floor(x / h * (1.0 + 1e-12));
  if (!(cells < 1e15)) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(std::max(cells, 0.0));
}

std::vector<double> hl_radii(const Grid& g) {
  const double h = g.step();
  std::vector<double> out{0.5 * h};
  for (std::size_t k = 1; k <= g.size(); k *= 2) out.push_back(static_cast<double>(k) * h);
  return out;
}

std::vector<double> fractional_radii(const Grid& g) {
  std::vector<double> out;
  for (std::size_t k = 1; k <= g.size(); k *= 2) out.push_back(static_cast<double>(k) * g.step());
  return out;
}

std::vector<double> global_radii(const Grid& g) {
  const double h = g.step();
  std::vector<double> out{0.5 * h};
  for (int j = 0; half_octave(j) >= 0.5 * h; ++j) out.push_back(half_octave(j));
  sort_unique(out);
  return out;
}

std::vector<double> regular_radii(const Grid& g, int ell, double lambda) {
  const double h = g.step();
  const ApproachRegion region{ell, lambda};
  std::vector<double> out = region.radii(h);
  const double top = region.degenerate() ? 1.0 : region.r_max();
  for (int j = 0; top * half_octave(j) >= h; ++j) out.push_back(top * half_octave(j));
  sort_unique(out);
  return out;
}

std::vector<double> beta_radii(const Grid& g) {
  std::vector<double> out;
  for (int j = 0; half_octave(j) >= g.step(); ++j) out.push_back(half_octave(j));
  sort_unique(out);
  return out;
}

Weight hardy_littlewood(const Weight& w, int iterations) {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const auto radii = hl_radii(w.grid());
  Weight cur = w;
  for (int it = 0; it < iterations; ++it) {
    cur = window_sup(cur, radii, [](double r) { return 1.0 / (2.0 * r); }, [](double) { return 0.0; });
  }
  return cur;
}

Weight fractional_maximal(const Weight& w, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  return window_sup(
      w, fractional_radii(w.grid()), [alpha](double r) { return std::pow(r, -(1.0 - alpha)); },
      [](double) { return 0.0; });
}

Weight approach_maximal(const Weight& w, const ApproachRegion& region) {
  if (region.ell < 2) throw std::invalid_argument("ell must be >= 2");
  if (!(region.lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const double h = w.grid().step();
  const double limit = 0.25 / region.lambda;
  if (h > limit * (1.0 + 1e-12)) {
    throw UnderResolved("grid step " + csv::format_double(h) + " exceeds lambda^-1/4", limit);
  }
  return window_sup(
      w, region.radii(h), [&](double r) { return region.aperture(r); },
      [&](double r) { return region.aperture(r); });
}

Weight global_maximal(const Weight& w, int ell) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2");
  const double e = -1.0 / (ell - 1);
  auto f = [e](double r) { return std::pow(r, e); };
  return window_sup(w, global_radii(w.grid()), f, f);
}

Weight regular_maximal(const SampledFunction& f, int ell, double lambda, double beta,
                       std::span<const double> radii, const BumpProfile& P) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2");
  const bool lambda_form = beta == kLambdaForm;
  if (!lambda_form && !(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("beta must lie in [0,1]");
  }
  if (lambda_form && !(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const double h = f.grid.step();
  if (radii.empty()) {
    throw UnderResolved("no admissible radius at or above the grid step",
                        lambda_form ? std::pow(lambda, -1.0 / ell) : 1.0);
  }
  const double e = -1.0 / (ell - 1);
  auto factor = [&](double r) {
    return lambda_form ? r * std::pow(lambda * r, e) : std::pow(r, ell * beta / (ell - 1));
  };
  auto aperture = [&](double r) { return lambda_form ? std::pow(lambda * r, e) : std::pow(r, e); };

  std::vector<std::vector<double>> per(radii.size());
  parallel_for(radii.size(), [&](std::size_t k) {
    const double r = radii[k];
    auto best = sliding_max(bump_average(f, r, P), span_cells(aperture(r), h));
    const double p = factor(r);
    for (double& v : best) v *= p;
    per[k] = std::move(best);
  });
  return {f.grid, max_over(per, f.size())};
}

Weight regular_maximal(const SampledFunction& f, int ell, double lambda, double beta,
                       const BumpProfile& P) {
  if (ell < 2) throw std::invalid_argument("ell must be >= 2");
  const bool lambda_form = beta == kLambdaForm;
  if (lambda_form && !(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const auto radii = lambda_form ? regular_radii(f.grid, ell, lambda) : beta_radii(f.grid);
  return regular_maximal(f, ell, lambda, beta, radii, P);
}

Weight regular_maximal(const Weight& w, int ell, double lambda, double beta, const BumpProfile& P) {
  return regular_maximal(w.as_function(), ell, lambda, beta, P);
}

MaximalOperator MaximalOperator::parse(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty operator name");
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("operator " + name + " is missing a parameter");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(parts[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[i].size()) throw std::invalid_argument("bad number in operator " + name);
    return v;
  };
  auto integer = [&](std::size_t i) {
    const double v = num(i);
    if (v != std::floor(v)) throw std::invalid_argument("operator " + name + " needs an integer");
    return static_cast<int>(v);
  };
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) throw std::invalid_argument("operator " + name + " has wrong arity");
  };
  MaximalOperator op;
  const std::string& head = parts[0];
  if (head == "M") {
    arity(0);
  } else if (head == "Mk") {
    arity(1);
    op.iterations = integer(1);
    if (op.iterations < 1) throw std::invalid_argument("Mk needs k >= 1");
  } else if (head == "Malpha") {
    arity(1);
    op.kind = Kind::fractional;
    op.parameter = num(1);
  } else if (head == "Mll" || head == "Mreg") {
    arity(2);
    op.kind = head == "Mll" ? Kind::approach : Kind::regular;
    op.ell = integer(1);
    op.lambda = num(2);
  } else if (head == "Mtilde") {
    arity(1);
    op.kind = Kind::global;
    op.ell = integer(1);
  } else if (head == "Mbeta") {
    arity(2);
    op.kind = Kind::beta;
    op.ell = integer(1);
    op.parameter = num(2);
  } else {
    throw std::invalid_argument("unknown operator " + name);
  }
  if (op.ell < 2) throw std::invalid_argument("operator " + name + " needs ell >= 2");
  if (!(op.lambda >= 1.0)) throw std::invalid_argument("operator " + name + " needs lambda >= 1");
  return op;
}

Weight MaximalOperator::apply(const Weight& w) const {
  switch (kind) {
    case Kind::hl: return hardy_littlewood(w, iterations);
    case Kind::fractional: return fractional_maximal(w, parameter);
    case Kind::approach: return approach_maximal(w, {ell, lambda});
    case Kind::global: return global_maximal(w, ell);
    case Kind::regular: return regular_maximal(w, ell, lambda, kLambdaForm);
    case Kind::beta: return regular_maximal(w, ell, 1.0, parameter);
  }
  return w;
}

std::string MaximalOperator::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::hl: os << (iterations == 1 ? "M" : "Mk:" + std::to_string(iterations)); break;
    case Kind::fractional: os << "Malpha:" << csv::format_double(parameter); break;
    case Kind::approach: os << "Mll:" << ell << ':' << csv::format_double(lambda); break;
    case Kind::global: os << "Mtilde:" << ell; break;
    case Kind::regular: os << "Mreg:" << ell << ':' << csv::format_double(lambda); break;
    case Kind::beta: os << "Mbeta:" << ell << ':' << csv::format_double(parameter); break;
  }
  return os.str();
}

std::size_t MaximalOperator::reach(const Grid& g) const {
  const double h = g.step();
  std::size_t cells = 0;
  auto widen = [&](std::size_t c) { cells = std::max(cells, std::min(c, g.size())); };
  switch (kind) {
    case Kind::hl:
    case Kind::fractional:
      return g.size();
    case Kind::approach: {
      const ApproachRegion region{ell, lambda};
      for (double r : region.radii(h)) widen(span_cells(region.aperture(r), h) + span_cells(r, h) + 1);
      break;
    }
    case Kind::global:
      for (double r : global_radii(g)) widen(span_cells(std::pow(r, -1.0 / (ell - 1)), h) + span_cells(r, h) + 1);
      break;
    case Kind::regular:
    case Kind::beta: {
      const bool lf = kind == Kind::regular;
      for (double r : lf ? regular_radii(g, ell, lambda) : beta_radii(g)) {
        const double a = lf ? std::pow(lambda * r, -1.0 / (ell - 1)) : std::pow(r, -1.0 / (ell - 1));
        widen(span_cells(a, h) + span_cells(2.0 * r, h));
      }
      break;
    }
  }
  return cells;
}

}  // namespace oscillab
