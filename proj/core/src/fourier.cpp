#include "bkev/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "bkev/error.hpp"

namespace bkev {
namespace {

// FFTW's planner is not thread-safe; everything that touches it goes through this lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::shared_ptr<const FourierTransform> FourierTransform::for_grid(const PeriodicGrid& grid) {
  static std::mutex cache_mutex;
  // Intentionally leaked: plans must outlive any static that still holds a transform at exit.
  static auto* cache = new std::map<std::pair<int, int>, std::shared_ptr<const FourierTransform>>();
  std::lock_guard lock(cache_mutex);
  auto& slot = (*cache)[{grid.dim(), grid.n()}];
  if (!slot) slot = std::make_shared<FourierTransform>(grid);
  return slot;
}

FourierTransform::FourierTransform(const PeriodicGrid& grid)
    : dim_(grid.dim()), n_(grid.n()), size_(grid.size()), spectral_size_(grid.spectral_size()) {
  std::vector<int> dims(static_cast<std::size_t>(dim_), n_);
  std::lock_guard lock(planner_mutex());
  double* real = fftw_alloc_real(size_);
  fftw_complex* spec = fftw_alloc_complex(spectral_size_);
  // ESTIMATE keeps plan selection (and therefore rounding) deterministic across runs.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c(dim_, dims.data(), real, spec, flags);
  inverse_plan_ = fftw_plan_dft_c2r(dim_, dims.data(), spec, real, flags);
  fftw_free(real);
  fftw_free(spec);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) throw Error("FFTW planning failed");
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void FourierTransform::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != size_ || out.size() != spectral_size_) throw Error("FourierTransform::forward: size mismatch");
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void FourierTransform::inverse(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != spectral_size_ || out.size() != size_) throw Error("FourierTransform::inverse: size mismatch");
  // c2r overwrites its input.
  thread_local std::vector<Complex> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(size_);
  std::ranges::for_each(out, [scale](double& v) { v *= scale; });
}

}  // namespace bkev
