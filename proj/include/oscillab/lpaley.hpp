#pragma once

// Dyadic and equally spaced Littlewood-Paley decompositions, the square
// function, the frequency annuli A_p and the chain of dominating weights.

#include <vector>

#include "oscillab/numerics.hpp"

namespace oscillab {

/// beta(xi) = chi(xi) - chi(2 xi) with chi = 1 on |xi| <= 1, 0 on |xi| >= 2.
/// Band k uses beta(2^-k xi); bands kmin..kmax sum to 1 on
/// 2^kmin <= |xi| <= 2^kmax.
struct DyadicFamily {
  int kmin = 0;
  int kmax = 0;

  static double chi(double xi);
  static double profile(double xi);
  double band(int k, double xi) const;
  double covered_low() const;
  double covered_high() const;
  /// Sum of all band multipliers at xi.
  double total(double xi) const;
};

/// Throws CoverageGap if more than 1e-8 of the energy of f lies outside the
/// covered range.
std::vector<SampledFunction> dyadic_pieces(const SampledFunction& f, const DyadicFamily& fam);
/// (sum_k |piece_k|^2)^{1/2}.
Weight square_function(const std::vector<SampledFunction>& pieces);

/// W_L^(xi) = eta(xi/L) / sum_k eta(xi/L - k), eta(t) = bump(t/2).
struct SpacedFamily {
  double L = 1.0;

  static double eta(double t);
  double window(double xi) const;
  /// Samples of W_L on g via the inverse transform.
  SampledFunction kernel(const Grid& g) const;
};

struct SpacedPieces {
  std::vector<int> k;
  std::vector<SampledFunction> pieces;
};

/// f_k^ = f^ W_L^(. - kL) for every k whose window meets the spectrum of f.
SpacedPieces spaced_pieces(const SampledFunction& f, const SpacedFamily& fam);

/// sup_x |W_L(x)| (1 + L|x|)^N / L over the grid, with the kernel centred at 0.
double spaced_decay_constant(const SpacedFamily& fam, const Grid& g, int N);

/// A_0 = {|xi| <= lambda^{1/ell}}, A_p = {2^{p-3} < |xi|/lambda^{1/ell} <= 2^{p+1}}.
struct AnnuliIndex {
  double lambda = 1.0;
  int ell = 2;

  double base() const;
  bool contains(int p, double xi) const;
  /// Number of annuli containing xi.
  int multiplicity(double xi) const;
};

SampledFunction annuli_project(const SampledFunction& f, const AnnuliIndex& idx, int p);

struct DominatingWeights {
  Weight w1;
  Weight w2;
  Weight w3;
  /// Mollifier scale 2^p lambda^{1/ell}.
  double scale = 0.0;
  /// L = 2^{-p/(ell-1)} lambda^{1/ell}.
  double L = 0.0;
  /// Sup radius (4 A_1)^{-1/(ell-1)} / L of w2.
  double radius = 0.0;
  /// C with w2 <= C w3: 1 / (h sum_{0 <= k h <= radius} Theta_L(k h)).
  double constant = 0.0;
  /// ||Phi_S||_1 on the grid.
  double phi_mass = 0.0;
  SampledFunction theta;
  SampledFunction phi;
};

/// w1 = ||Phi_S||_1 (|Phi_S| * w) with Phi^ = 1 on [-4,4], 0 off [-8,8];
/// w2 = sliding sup of w1 over the radius; w3 = Theta_L * w2 with
/// Theta_L^ = (b*b)(xi/L), b(t) = bump(2t). Throws BadBand unless
/// 1 <= 2^p < 4 A1 lambda^{(ell-1)/ell}, UnderResolved if 8S exceeds Nyquist.
DominatingWeights dominating_weights(const Weight& w, int p, double lambda, int ell, double A1);

}  // namespace oscillab
