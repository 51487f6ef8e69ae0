#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "oscillab/numerics.hpp"

namespace oscillab::detail {

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// Plans are built once per (n, sign) with FFTW_UNALIGNED so they can run on
// any buffer through the new-array interface. Execution is thread safe;
// planning is not, hence the lock.
fftw_plan plan_for(std::size_t n, int sign) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto it = c.plans.find({n, sign});
  if (it != c.plans.end()) return it->second;
  auto* scratch = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  if (p == nullptr) throw std::runtime_error("fftw planning failed");
  c.plans.emplace(std::make_pair(n, sign), p);
  return p;
}

}  // namespace

void fft_inplace(std::vector<Complex>& data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(data.size(), sign), buf, buf);
}

}  // namespace oscillab::detail
