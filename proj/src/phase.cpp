#include "oscillab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oscillab/errors.hpp"

namespace oscillab {

namespace {

double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

double factorial(int n) { return falling_factorial(n, n); }

constexpr int kSupportGrid = 1024;

}  // namespace

Phase Phase::monomial(int degree) {
  if (degree < 1) throw std::invalid_argument("monomial degree must be >= 1");
  Phase p;
  p.kind_ = PhaseKind::monomial;
  p.degree_ = degree;
  return p;
}

Phase Phase::cosine() {
  Phase p;
  p.kind_ = PhaseKind::cosine;
  return p;
}

Phase Phase::custom(std::vector<Derivative> derivatives) {
  if (derivatives.empty()) throw std::invalid_argument("custom phase needs its value function");
  Phase p;
  p.kind_ = PhaseKind::custom;
  p.custom_ = std::make_shared<const std::vector<Derivative>>(std::move(derivatives));
  return p;
}

int Phase::max_analytic_order() const noexcept {
  if (kind_ == PhaseKind::custom) return static_cast<int>(custom_->size()) - 1;
  return kUnbounded;
}

double Phase::base(int k, double t) const {
  switch (kind_) {
    case PhaseKind::monomial:
      if (k > degree_) return 0.0;
      return falling_factorial(degree_, k) * std::pow(t, degree_ - k);
    case PhaseKind::cosine:
      switch (k % 4) {
        case 0: return std::cos(t);
        case 1: return -std::sin(t);
        case 2: return -std::cos(t);
        default: return std::sin(t);
      }
    case PhaseKind::custom: {
      const int top = static_cast<int>(custom_->size()) - 1;
      if (k <= top) return (*custom_)[static_cast<std::size_t>(k)](t);
      const double h = kDifferenceStep;
      return (-base(k - 1, t + 2 * h) + 8 * base(k - 1, t + h) - 8 * base(k - 1, t - h) +
              base(k - 1, t - 2 * h)) /
             (12 * h);
    }
  }
  return 0.0;
}

double Phase::eval(int k, double x) const {
  if (!supports(k)) {
    throw OrderUnavailable("derivative of order " + std::to_string(k) + " unavailable for " +
                           describe());
  }
  double v = scale_ * base(k, x - shift_);
  if (k == 0) v += c0_ + c1_ * x;
  if (k == 1) v += c1_;
  return v;
}

Phase Phase::translated(double a) const {
  Phase p = *this;
  p.shift_ += a;
  p.c0_ -= c1_ * a;
  return p;
}

Phase Phase::plus_affine(double c0, double c1) const {
  Phase p = *this;
  p.c0_ += c0;
  p.c1_ += c1;
  return p;
}

Phase Phase::scaled(double s) const {
  Phase p = *this;
  p.scale_ *= s;
  p.c0_ *= s;
  p.c1_ *= s;
  return p;
}

std::string Phase::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case PhaseKind::monomial: os << "x^" << degree_; break;
    case PhaseKind::cosine: os << "cos"; break;
    case PhaseKind::custom: os << "custom(" << custom_->size() - 1 << ")"; break;
  }
  if (scale_ != 1.0) os << " scale=" << scale_;
  if (shift_ != 0.0) os << " shift=" << shift_;
  if (c0_ != 0.0 || c1_ != 0.0) os << " affine=" << c0_ << "," << c1_;
  return os.str();
}

void TypeReport::require() const {
  if (!pass) throw ValidationFailed(violation);
}

namespace {

void check_spec(const FiniteTypeSpec& spec) {
  if (spec.ell < 2) throw std::invalid_argument("ell must be >= 2");
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (spec.u && !(*spec.u > 0.0)) throw std::invalid_argument("u must be positive");
}

// True when s phi^(ell) >= epsilon/2 on a uniform grid over [x0-u, x0+u].
bool leading_holds(const Phase& phase, const FiniteTypeSpec& spec, double sign, double u) {
  for (int j = 0; j <= kSupportGrid; ++j) {
    const double x = spec.x0 - u + 2.0 * u * j / kSupportGrid;
    if (sign * phase.eval(spec.ell, x) < 0.5 * spec.epsilon) return false;
  }
  return true;
}

double leading_sign(const Phase& phase, const FiniteTypeSpec& spec) {
  return phase.eval(spec.ell, spec.x0) < 0.0 ? -1.0 : 1.0;
}

std::optional<double> find_support(const Phase& phase, const FiniteTypeSpec& spec) {
  const double s = leading_sign(phase, spec);
  if (spec.u) {
    if (leading_holds(phase, spec, s, *spec.u)) return *spec.u;
    return std::nullopt;
  }
  double u = 1.0;
  for (int m = 0; m <= 30; ++m, u *= 0.5) {
    if (leading_holds(phase, spec, s, u)) return u;
  }
  return std::nullopt;
}

}  // namespace

TypeReport validate_finite_type(const Phase& phase, const FiniteTypeSpec& spec, double tol) {
  check_spec(spec);
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!phase.supports(spec.ell + 1)) {
    throw OrderUnavailable("phase " + phase.describe() + " lacks derivatives up to order " +
                           std::to_string(spec.ell + 1));
  }
  // Touch order ell+1 so custom derivatives that throw surface here.
  (void)phase.eval(spec.ell + 1, spec.x0);

  TypeReport r;
  r.ell = spec.ell;
  r.x0 = spec.x0;
  r.epsilon = spec.epsilon;
  r.pass = true;
  auto fail = [&r](std::string why) {
    if (r.pass) r.violation = std::move(why);
    r.pass = false;
  };

  for (int k = 2; k < spec.ell; ++k) {
    const double v = std::abs(phase.eval(k, spec.x0));
    r.vanishing.push_back(v);
    if (v > tol) {
      fail("derivative of order " + std::to_string(k) + " at x0 is " + std::to_string(v) +
           ", expected 0");
    }
  }
  r.leading = phase.eval(spec.ell, spec.x0);
  if (std::abs(r.leading) < spec.epsilon - tol) {
    fail("|derivative of order " + std::to_string(spec.ell) + " at x0| = " +
         std::to_string(std::abs(r.leading)) + " < epsilon = " + std::to_string(spec.epsilon));
  }
  if (auto u = find_support(phase, spec)) {
    r.u = *u;
  } else if (r.pass) {
    fail("leading derivative falls below epsilon/2 on every candidate neighbourhood");
  }
  return r;
}

double resolve_support(const Phase& phase, const FiniteTypeSpec& spec) {
  check_spec(spec);
  if (auto u = find_support(phase, spec)) return *u;
  throw ValidationFailed("no neighbourhood where the leading derivative stays above epsilon/2");
}

Phase normalized(const Phase& phase, const FiniteTypeSpec& spec) {
  return phase.translated(-spec.x0).plus_affine(-phase.eval(0, spec.x0), -phase.eval(1, spec.x0));
}

std::optional<double> derivative_bound(const Phase& phase, const FiniteTypeSpec& spec, int j) {
  if (j < 0 || j > spec.ell + 2) return std::nullopt;
  const double u = resolve_support(phase, spec);
  const Phase p = normalized(phase, spec);
  double m = 0.0;
  for (int i = 0; i <= kSupportGrid; ++i) {
    const double x = -u + 2.0 * u * i / kSupportGrid;
    m = std::max(m, std::abs(p.eval(j, x)));
  }
  if (static_cast<std::size_t>(j) < spec.bounds.size()) m = std::min(m, spec.bounds[static_cast<std::size_t>(j)]);
  return m;
}

ComparabilityReport comparability_check(const Phase& phase, const FiniteTypeSpec& spec, int k,
                                        double grid_step) {
  check_spec(spec);
  if (k < 0 || k > spec.ell - 1) throw std::invalid_argument("k must lie in [0, ell-1]");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid step must be positive");
  const double u = resolve_support(phase, spec);
  const auto cells = static_cast<long>(std::floor(u / grid_step * (1.0 + 1e-12)));
  if (2 * cells < 8) throw DegenerateSupport("fewer than 8 grid points in U");

  // Taylor coefficients phi^(j)(x0) for k <= j < ell.
  std::vector<double> taylor;
  for (int j = k; j < spec.ell; ++j) taylor.push_back(phase.eval(j, spec.x0));
  ComparabilityReport r;
  r.k = k;
  r.min_ratio = INFINITY;
  r.max_ratio = 0.0;
  r.upper = *derivative_bound(phase, spec, spec.ell) / spec.epsilon;
  for (long i = -cells; i <= cells; ++i) {
    if (i == 0) continue;
    const double t = static_cast<double>(i) * grid_step;
    double v = phase.eval(k, spec.x0 + t);
    for (int j = static_cast<int>(taylor.size()) - 1; j >= 0; --j) {
      v -= taylor[static_cast<std::size_t>(j)] * std::pow(t, j) / factorial(j);
    }
    const double ratio = std::abs(v) / (spec.epsilon * std::pow(std::abs(t), spec.ell - k));
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
    ++r.points;
  }
  constexpr double delta = 1e-3;
  r.pass = r.min_ratio >= 0.5 * (1 - delta) && r.max_ratio <= r.upper * (1 + delta);
  return r;
}

}  // namespace oscillab
