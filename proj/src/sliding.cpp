#include "oscillab/sliding.hpp"

#include <deque>

namespace oscillab {

std::vector<double> sliding_max(std::span<const double> v, std::size_t half) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  std::deque<std::size_t> dq;  // indices with decreasing values
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hi = (half >= n - 1 - i) ? n - 1 : i + half;
    for (; next <= hi; ++next) {
      while (!dq.empty() && v[dq.back()] <= v[next]) dq.pop_back();
      dq.push_back(next);
    }
    const std::size_t lo = i > half ? i - half : 0;
    while (dq.front() < lo) dq.pop_front();
    out[i] = v[dq.front()];
  }
  return out;
}

}  // namespace oscillab
