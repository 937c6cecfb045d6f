#pragma once

#include <memory>
#include <span>

#include "bkev/grid.hpp"

namespace bkev {

/// Cached real<->complex FFT plans for one grid shape (dim, n).
///
/// Plans are created once per (dim, n) under a process-wide lock and shared
/// read-only afterwards; execution is reentrant, so one instance may be used
/// from several threads at the same time.
class FourierTransform {
 public:
  static std::shared_ptr<const FourierTransform> for_grid(const PeriodicGrid& grid);

  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  /// Unnormalized r2c of one channel: in.size() == grid.size(),
  /// out.size() == grid.spectral_size().
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// c2r of one channel divided by n^dim. `in` is not modified.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

  explicit FourierTransform(const PeriodicGrid& grid);

 private:
  int dim_;
  int n_;
  std::size_t size_;
  std::size_t spectral_size_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace bkev
