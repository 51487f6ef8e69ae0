#pragma once

// Smooth phases with derivative evaluation, finite-type validation and the
// model comparability |phi^(k)(x)| ~ |x - x0|^(ell - k).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oscillab {

enum class PhaseKind { monomial, cosine, custom };

/// Immutable phase x -> s * base(x - a) + c0 + c1 x. Derivatives above the
/// analytic order come from 5-point centered differences (step 1e-4), at most
/// two levels deep.
class Phase {
 public:
  using Derivative = std::function<double(double)>;

  static constexpr int kUnbounded = 1 << 20;
  static constexpr double kDifferenceStep = 1e-4;
  static constexpr int kMaxDifferenceLevels = 2;

  /// x^degree, degree >= 1.
  static Phase monomial(int degree);
  static Phase cosine();
  /// derivatives[k] evaluates the k-th derivative; needs at least one entry.
  static Phase custom(std::vector<Derivative> derivatives);

  PhaseKind kind() const noexcept { return kind_; }
  /// Degree for the monomial kind, 0 otherwise.
  int degree() const noexcept { return degree_; }
  int max_analytic_order() const noexcept;
  bool supports(int k) const noexcept { return k >= 0 && k <= max_analytic_order() + kMaxDifferenceLevels; }

  /// k-th derivative at x. Throws OrderUnavailable past the difference limit.
  double eval(int k, double x) const;

  /// x -> phi(x - a).
  Phase translated(double a) const;
  /// x -> phi(x) + c0 + c1 x.
  Phase plus_affine(double c0, double c1) const;
  /// x -> s phi(x).
  Phase scaled(double s) const;

  std::string describe() const;

 private:
  Phase() = default;
  double base(int k, double t) const;

  PhaseKind kind_ = PhaseKind::monomial;
  int degree_ = 0;
  std::shared_ptr<const std::vector<Derivative>> custom_;
  double shift_ = 0.0;
  double scale_ = 1.0;
  double c0_ = 0.0;
  double c1_ = 0.0;
};

struct FiniteTypeSpec {
  double x0 = 0.0;
  int ell = 2;
  double epsilon = 1.0;
  /// Optional caller bounds A_j, indexed by derivative order.
  std::vector<double> bounds;
  /// Half-width of U = [x0 - u, x0 + u]; chosen by halving search when absent.
  std::optional<double> u;
};

struct TypeReport {
  int ell = 0;
  double x0 = 0.0;
  double epsilon = 0.0;
  /// |phi^(k)(x0)| for k = 2 .. ell-1.
  std::vector<double> vanishing;
  /// phi^(ell)(x0) with its sign.
  double leading = 0.0;
  /// Half-width of U that was checked (0 when no admissible U exists).
  double u = 0.0;
  bool pass = false;
  std::string violation;

  /// Throws ValidationFailed carrying the first violated condition.
  void require() const;
};

/// Throws std::invalid_argument for ell < 2, epsilon <= 0, u <= 0 or tol <= 0,
/// and OrderUnavailable when derivatives up to ell+1 cannot be evaluated.
TypeReport validate_finite_type(const Phase& phase, const FiniteTypeSpec& spec, double tol = 1e-9);

/// Half-width of U: spec.u if given, else the largest 2^-m <= 1 with
/// s phi^(ell) >= epsilon/2 on a 1024-point grid over U (s the sign of
/// phi^(ell)(x0)). Throws ValidationFailed if no such U is found.
double resolve_support(const Phase& phase, const FiniteTypeSpec& spec);

/// x -> phi(x0 + x) - phi(x0) - phi'(x0) x.
Phase normalized(const Phase& phase, const FiniteTypeSpec& spec);

/// A_j = max over U of |(normalized phi)^(j)|, capped by a supplied bound.
/// Orders beyond ell+2 are not tracked and give nullopt.
std::optional<double> derivative_bound(const Phase& phase, const FiniteTypeSpec& spec, int j);

struct ComparabilityReport {
  int k = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// A_ell / epsilon.
  double upper = 0.0;
  std::size_t points = 0;
  bool pass = false;
};

/// Extremes over grid points x0 + j h in U, j != 0, of
/// |(phi - Taylor_{ell-1})^(k)(x)| / (epsilon |x - x0|^(ell-k)).
/// Throws DegenerateSupport if fewer than 8 points lie in U.
ComparabilityReport comparability_check(const Phase& phase, const FiniteTypeSpec& spec, int k,
                                        double grid_step);

}  // namespace oscillab
