#pragma once

#include "oscillab/numerics.hpp"

namespace oracle {

/// O(n^2) evaluation of h sum_j f(x_j) g(x_k - x_j), summing in index order.
oscillab::SampledFunction direct_convolution(const oscillab::SampledFunction& f,
                                             const oscillab::SampledFunction& g);

/// Direct O(n^2) evaluation of h sum_j f(x_j) e^{-i xi x_j} at one frequency.
oscillab::Complex direct_transform(const oscillab::SampledFunction& f, double xi);

}  // namespace oracle
