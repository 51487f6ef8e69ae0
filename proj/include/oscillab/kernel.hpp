#pragma once

// The oscillatory kernel K = e^{i lambda phi} psi, the operator T f = K * f,
// its spectrum and the decay profile of that spectrum.

#include <string>
#include <vector>

#include "oscillab/numerics.hpp"
#include "oscillab/phase.hpp"

namespace oscillab {

/// psi(x) = bump((x - center) / u): smooth, even about center, zero off U.
struct Cutoff {
  double center = 0.0;
  double u = 1.0;

  double operator()(double x) const;
};

enum class ApplyMode { fft, quadrature };

class Kernel {
 public:
  /// Phase in the normalized frame (x0 moved to 0, affine part removed).
  const Phase& phase() const noexcept { return phase_; }
  const FiniteTypeSpec& spec() const noexcept { return spec_; }
  double lambda() const noexcept { return lambda_; }
  int ell() const noexcept { return spec_.ell; }
  const Cutoff& cutoff() const noexcept { return cutoff_; }
  const SampledFunction& samples() const noexcept { return samples_; }
  const Grid& grid() const noexcept { return samples_.grid; }
  /// Sup of |phi'| over U in the normalized frame, capped by a supplied A_1.
  double a1() const noexcept { return a1_; }

 private:
  friend Kernel build_kernel(const Phase&, const FiniteTypeSpec&, double, const Grid&, double);
  Kernel(Phase p, FiniteTypeSpec s, double lambda, Cutoff c, SampledFunction k, double a1)
      : phase_(std::move(p)), spec_(std::move(s)), lambda_(lambda), cutoff_(c),
        samples_(std::move(k)), a1_(a1) {}

  Phase phase_;
  FiniteTypeSpec spec_;
  double lambda_;
  Cutoff cutoff_;
  SampledFunction samples_;
  double a1_;
};

/// Largest admissible grid step: min(1/(8 lambda), u/64, pi/(4 lambda A_1)).
double max_kernel_step(const Phase& phase, const FiniteTypeSpec& spec, double lambda);

/// Samples e^{i lambda phi_n(x - position)} psi(x - position), where phi_n is
/// the normalized phase and psi is centred at 0 with half-width u. Uses spec.u
/// when given, otherwise the halving search. Throws UnderResolved when the
/// grid step exceeds max_kernel_step, std::invalid_argument for lambda < 1.
Kernel build_kernel(const Phase& phase, const FiniteTypeSpec& spec, double lambda,
                    const Grid& grid, double position = 0.0);

/// T f = K * f.
SampledFunction apply_T(const Kernel& kernel, const SampledFunction& f,
                        ApplyMode mode = ApplyMode::fft);

SpectralFunction kernel_spectrum(const Kernel& kernel);

struct DecayReport {
  double lambda = 0.0;
  int ell = 0;
  int order = 0;
  /// max |K^| over |xi| <= lambda^{1/ell}.
  double sup_low = 0.0;
  /// Per dyadic annulus (2^{j-1}, 2^j] lambda^{1/ell}, clipped to lambda:
  /// max |K^(xi)| lambda^{1/(2(ell-1))} |xi|^{(ell-2)/(2(ell-1))}.
  std::vector<double> tail_constants;
  double tail_max = 0.0;
  /// max |K^(xi)| |xi|^N over 2 A_1 lambda <= |xi| <= Nyquist.
  double far_field = 0.0;
};

/// Throws UnderResolved when the Nyquist frequency is below 4 A_1 lambda.
DecayReport check_decay(const Kernel& kernel, int N);
DecayReport check_decay(const Kernel& kernel, const SpectralFunction& spectrum, int N);

/// CSV with columns lambda,ell,sup_low,tail_max,far_field.
std::string decay_csv(const std::vector<DecayReport>& reports);

}  // namespace oscillab
