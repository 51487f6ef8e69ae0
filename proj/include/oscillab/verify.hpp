#pragma once

// Experiment harness: both sides of each weighted inequality, operator and
// maximal norm sweeps over lambda, power-law fits and the scaling identities
// of the maximal family.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscillab/corpus.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/lpaley.hpp"
#include "oscillab/maximal.hpp"
#include "oscillab/numerics.hpp"
#include "oscillab/phase.hpp"

namespace oscillab {

struct Provenance {
  std::string experiment;
  std::string f;
  std::string w;
  int ell = 0;
  double lambda = 0.0;
  int p = -1;
  std::uint64_t seed = 0;

  std::string describe() const;
};

struct RatioSample {
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs, or 0 when rhs = 0 (then `degenerate` is set).
  double ratio = 0.0;
  bool degenerate = false;
  Provenance provenance;

  /// rhs = 0 while lhs exceeds `floor`: the inequality cannot hold.
  bool violates(double floor = 1e-10) const { return degenerate && lhs > floor; }
};

RatioSample make_ratio(double lhs, double rhs, Provenance provenance);

/// Largest ratio, ignoring vacuous 0/0 samples. Empty input gives nullopt.
std::optional<RatioSample> max_ratio(const std::vector<RatioSample>& samples);

struct SweepPoint {
  double lambda = 0.0;
  double value = 0.0;
};

struct PowerLaw {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least squares on (log lambda, log value). Throws InsufficientPoints for
/// fewer than 3 points or repeated lambdas, NonpositiveValue for lambda <= 0
/// or value <= 0.
PowerLaw fit_power_law(const std::vector<SweepPoint>& points);

struct SweepReport {
  std::string experiment;
  int ell = 0;
  std::vector<SweepPoint> points;
  std::optional<PowerLaw> fit;
  /// Why the fit is missing, empty when it exists.
  std::string flag;
  /// Sample realizing the value at each point.
  std::vector<RatioSample> witnesses;
};

/// Fits `points` (sorted by lambda) into `report`, flagging instead of throwing.
void fit_report(SweepReport& report);

/// Largest power-of-two step that resolves the kernel and the approach region:
/// min(max_kernel_step, 1/(8 lambda)).
double experiment_step(const Phase& phase, const FiniteTypeSpec& spec, double lambda);

/// M^2 M_{ell,lambda} M^4 w.
Weight theorem_weight(const Weight& w, int ell, double lambda);

/// lhs = int |T f|^2 w, rhs = int |f|^2 W with W = theorem_weight(w).
RatioSample main_theorem_ratio(const Kernel& kernel, const SampledFunction& f, const Weight& w,
                               const Weight& dominating, Provenance provenance);
RatioSample main_theorem_ratio(const SampledFunction& f, const Weight& w, const Phase& phase,
                               const FiniteTypeSpec& spec, double lambda);

struct SquareFunctionRatios {
  /// int (Sf)^2 w / int |f|^2 M w.
  RatioSample forward;
  /// int |f|^2 w / int (Sf)^2 M^3 w.
  RatioSample backward;
};

SquareFunctionRatios square_function_ratios(const SampledFunction& f, const Weight& w,
                                            const DyadicFamily& fam, Provenance provenance = {});

/// h sum_k sum |f_k|^2 w / h sum |f|^2 (|W_L| * w).
RatioSample spaced_ratio(const SampledFunction& f, const Weight& w, const SpacedFamily& fam,
                         Provenance provenance = {});

struct UncertaintyRatios {
  /// int |Tf|^2 w / (||Psi||_1 int |Tf|^2 (|Psi|(-.) * w)).
  RatioSample mol;
  /// int |Tf|^2 w / (||T Psi||_1 int |f|^2 (|T Psi|(-.) * w)).
  RatioSample mol2;
};

/// Psi^ = plateau(xi / band): 1 on |xi| <= band. Throws SupportViolation if
/// more than 1e-8 of the energy of f^ lies outside [-band, band].
UncertaintyRatios uncertainty_bounds_check(const SampledFunction& f, const Kernel& kernel,
                                           const Weight& w, double band, Provenance provenance = {});

/// Range of p for the envelope and weight chain: 0 <= p < log2(4 A1 lambda^{(ell-1)/ell}).
int max_band(double lambda, int ell, double a1);

/// sup |T Psi_{L,k}(x)| (1 + L|x|)^N against lambda^{-1/ell} 2^{-p(ell-2)/(2(ell-1))} L,
/// where Psi_{L,k}^(xi) = plateau((xi - kL)/(2L)) and L = 2^{-p/(ell-1)} lambda^{1/ell}.
/// lhs is the weighted sup, rhs the prefactor. Throws BadBand unless p is in
/// range and |k| is within a factor 2 of 2^{p ell/(ell-1)}.
RatioSample envelope_check(const Phase& phase, const FiniteTypeSpec& spec, double lambda, int p,
                           double k, int N);

/// int |T f_p|^2 w / int |f_p|^2 (M M_{ell,lambda} M w) with f_p the
/// restriction of f^ to the annulus A_p.
RatioSample frequency_restricted_ratio(const Kernel& kernel, const SampledFunction& f,
                                       const Weight& w, int p, Provenance provenance = {});

/// ||op w||_q / ||w||_q over the cells at least op.reach() from either end.
RatioSample maximal_ratio(const MaximalOperator& op, const Weight& w, double q, Provenance provenance = {});

struct WeightCorpus {
  std::vector<corpus::WeightKind> kinds{corpus::WeightKind::constant};
  /// Weights generated per kind (constant always yields one).
  int per_kind = 1;
  std::uint64_t seed = 0;
};

/// Per lambda: max over the corpus of ||M_{ell,lambda} w||_q / ||w||_q on the
/// interior of the grid, q = infinity allowed.
SweepReport maximal_norm_sweep(int ell, const std::vector<double>& lambdas, double q,
                               const WeightCorpus& corpus);

struct FunctionCorpus {
  /// Focusing input widths as fractions of the cutoff half-width.
  std::vector<double> focusing{1.0, 0.5, 0.25};
  int random = 4;
  std::uint64_t seed = 0;
  /// Only the zero function.
  bool zero = false;
};

/// Per lambda: max over the corpus of ||T f||_ell / ||f||_ell.
SweepReport operator_norm_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                const std::vector<double>& lambdas, const FunctionCorpus& corpus);

/// Decay reports for each lambda on a grid of half-width 8 at the experiment
/// step; the returned sweep holds sup_low per lambda.
SweepReport kernel_decay_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                               const std::vector<double>& lambdas, int N,
                               std::vector<DecayReport>& reports);

/// Grid used for approach-region experiments at lambda: step the largest power
/// of two <= 1/(4 lambda), half-width leaving room for every window.
Grid maximal_grid(double lambda);

/// Largest relative gap between M~_{ell,lambda} w(x) and
/// lambda^{-2/ell} M~_{ell,1}(w(lambda^{-1/ell} .))(lambda^{1/ell} x) over the
/// points at least `margin` from either end whose value exceeds 1e-12 of the peak.
/// The unit-scale side runs on the rescaled grid with the rescaled radii.
double dilation_deviation(const Weight& w, int ell, double lambda, double margin);

/// Smallest C with M_{ell,eps lambda} w <= C M_{ell,lambda} w at the points at
/// least `margin` from either end. Infinite if the right side vanishes where
/// the left does not, which happens for eps < 1: the rescaled region reaches
/// 1 + 1/(eps lambda) from x, the original only 1 + 1/lambda.
double rescaling_constant(const Weight& w, int ell, double lambda, double eps, double margin);

/// h sum |M_ell^1 a| for the atom of the given length.
double atom_norm(const Grid& g, int ell, double length);

/// Seeded (f, w) pairs for the main inequality at one lambda: `weights` mixed
/// weights, each paired with `per_weight` functions (random trigonometric
/// polynomials and focusing inputs).
std::vector<RatioSample> main_theorem_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                            double lambda, int weights, int per_weight,
                                            std::uint64_t seed);

/// Forward and backward square function ratios over `count` band-limited
/// inputs and mixed weights, interleaved (forward first).
std::vector<RatioSample> dyadic_sweep(const DyadicFamily& fam, int count, std::uint64_t seed);

/// Spaced decomposition ratios over `count` seeded inputs.
std::vector<RatioSample> spaced_sweep(const SpacedFamily& fam, int count, std::uint64_t seed);

/// Both uncertainty ratios over `count` inputs band-limited to |xi| <= band,
/// interleaved (mol first).
std::vector<RatioSample> uncertainty_sweep(const Phase& phase, const FiniteTypeSpec& spec,
                                           double lambda, double band, int count,
                                           std::uint64_t seed);

struct ChainCheck {
  int p = 0;
  /// The module constant C of w2 <= C w3.
  double constant = 0.0;
  /// max w2 / (C w3) where w2 exceeds 1e-9 of its peak.
  double worst = 0.0;
  bool ordered = true;
};

/// Weight chain over `count` mixed weights at one (ell, lambda, p).
ChainCheck weight_chain_check(int ell, double lambda, int p, double a1, int count, std::uint64_t seed);

/// CSV with columns experiment,ell,lambda,p,seed,lhs,rhs,ratio.
std::string results_csv(const std::vector<RatioSample>& samples);
/// CSV with columns experiment,ell,lambda,value.
std::string sweep_csv(const std::vector<SweepReport>& reports);

}  // namespace oscillab
