#pragma once

// Seeded test inputs: weights with features at every scale down to 1/lambda,
// random trigonometric polynomials, band-limited wave packets, focusing
// inputs and H^1 atoms. The same (grid, lambda, seed) always yields the same
// samples.

#include <cstdint>
#include <string>
#include <vector>

#include "oscillab/kernel.hpp"
#include "oscillab/numerics.hpp"

namespace oscillab::corpus {

/// Features are placed inside [-kFeatureExtent, kFeatureExtent].
inline constexpr double kFeatureExtent = 2.5;

enum class WeightKind { constant, bump, spike, block, mixed };

WeightKind parse_weight_kind(const std::string& name);
std::string to_string(WeightKind kind);

/// constant: 1 everywhere. bump/block: one feature of width log-uniform in
/// [1/lambda, 1]. spike: one cell. mixed: 3 to 8 features of every type.
Weight make_weight(WeightKind kind, const Grid& g, double lambda, std::uint64_t seed);

/// sum_m a_m e^{i xi_m x} bump(x / radius), 4 to 8 terms, |xi_m| log-uniform
/// in [1, max_frequency] with random sign, a_m complex Gaussian.
SampledFunction random_trig(const Grid& g, double max_frequency, double radius, std::uint64_t seed);

/// Spectrum bump((|xi| - mid)/half) sum_j c_j e^{-i xi x_j} on lo <= |xi| <= hi:
/// a few wave packets centred at x_j in [-spread, spread].
SampledFunction band_limited(const Grid& g, double lo, double hi, double spread, std::uint64_t seed);

/// e^{-i lambda phi(-y)} bump(y / delta) in the kernel's normalized frame, so
/// that T f(0) integrates a nonnegative function.
SampledFunction focusing(const Kernel& kernel, const Grid& g, double delta);

/// Mean-zero atom on [-length/2, length/2]: +1/length on the left half,
/// -1/length on the right half.
SampledFunction atom(const Grid& g, double length);

}  // namespace oscillab::corpus
