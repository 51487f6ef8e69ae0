#pragma once

// Maximal operators: Hardy-Littlewood and its iterates, the fractional
// maximal function, the approach-region operator, its global counterpart and
// the regularized bump family.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oscillab/numerics.hpp"

namespace oscillab {

/// Region lambda^-1 < r <= lambda^{-1/ell}, |y - x| <= (lambda r)^{-1/(ell-1)}.
struct ApproachRegion {
  int ell = 2;
  double lambda = 1.0;

  double r_min() const { return 1.0 / lambda; }
  double r_max() const;
  double aperture(double r) const;
  /// lambda = 1 leaves the radius range empty; the single radius 1 is used.
  bool degenerate() const { return lambda <= 1.0; }
  /// Half-octave radii lambda^-1 2^{j/2}, the endpoints lambda^{-1/k}
  /// (2 <= k <= ell) and lambda^-1 + h, restricted to (lambda^-1, lambda^{-1/ell}].
  std::vector<double> radii(double h) const;
};

/// P(t) = exp(-1/(1 - t^2/4)) on (-2, 2). min over [-1,1] is P(1) = e^{-4/3}.
struct BumpProfile {
  double operator()(double t) const;
  double c_p() const;
  /// (h/r) sum_{|d| <= 2r/h} P(d h / r): discrete mass of P_r.
  double discrete_mass(double r, double h) const;
};

/// Cells spanned by a distance x on a grid of step h (tolerant of rounding).
std::size_t span_cells(double x, double h);

std::vector<double> hl_radii(const Grid& g);
std::vector<double> fractional_radii(const Grid& g);
std::vector<double> global_radii(const Grid& g);
std::vector<double> regular_radii(const Grid& g, int ell, double lambda);
std::vector<double> beta_radii(const Grid& g);

/// Centered averages (1/2r) int_{|y-x|<r} w over r in {h/2} and 2^k h up to
/// the grid width, composed `iterations` times.
Weight hardy_littlewood(const Weight& w, int iterations = 1);

/// sup_r r^{-(1-alpha)} int_{|y-x|<r} w, r in 2^k h. Requires 0 < alpha < 1.
Weight fractional_maximal(const Weight& w, double alpha);

/// sup over the approach region of (lambda r)^{-1/(ell-1)} int_{|y'-y|<=r} w.
/// Throws UnderResolved when h > lambda^-1 / 4.
Weight approach_maximal(const Weight& w, const ApproachRegion& region);

/// sup over 0 < r <= 1, |y-x| <= r^{-1/(ell-1)} of r^{-1/(ell-1)} int w.
Weight global_maximal(const Weight& w, int ell);

/// Passing kLambdaForm as beta selects the lambda form.
inline constexpr double kLambdaForm = -1.0;

/// lambda form: sup over 0 < r <= lambda^{-1/ell}, |y-x| <= (lambda r)^{-1/(ell-1)}
/// of r (lambda r)^{-1/(ell-1)} |P_r * f(y)|.
/// beta form: sup over 0 < r <= 1, |y-x| <= r^{-1/(ell-1)} of
/// r^{ell beta/(ell-1)} |P_r * f(y)|.
/// P_r * f is the discrete sum (h/r) sum_d P(d h/r) f_{i-d}.
Weight regular_maximal(const SampledFunction& f, int ell, double lambda, double beta,
                       const BumpProfile& P = {});
Weight regular_maximal(const Weight& w, int ell, double lambda, double beta,
                       const BumpProfile& P = {});
/// Same sup over an explicit radius set instead of the default one.
Weight regular_maximal(const SampledFunction& f, int ell, double lambda, double beta,
                       std::span<const double> radii, const BumpProfile& P = {});

/// Operator chosen by name: "M", "Mk:4", "Malpha:0.5", "Mll:3:256",
/// "Mtilde:3", "Mreg:3:256", "Mbeta:3:1.0".
struct MaximalOperator {
  enum class Kind { hl, fractional, approach, global, regular, beta };
  Kind kind = Kind::hl;
  int iterations = 1;
  int ell = 2;
  double lambda = 1.0;
  double parameter = 0.0;  // alpha or beta

  static MaximalOperator parse(const std::string& name);
  Weight apply(const Weight& w) const;
  std::string name() const;
  /// Cells from x that any window of the operator touches; points closer than
  /// this to either end of the grid see the zero extension.
  std::size_t reach(const Grid& g) const;
};

}  // namespace oscillab
