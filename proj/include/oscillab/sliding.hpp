#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oscillab {

/// out[i] = max of v[j] over |j - i| <= half, j clipped to the array.
/// Monotone deque, O(n) regardless of `half`.
std::vector<double> sliding_max(std::span<const double> v, std::size_t half);

}  // namespace oscillab
