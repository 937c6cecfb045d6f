#pragma once

#include <array>
#include <memory>
#include <vector>

#include "bkev/fourier.hpp"
#include "bkev/solvers.hpp"

namespace bkev::detail {

/// Per-mode wavenumber tables on the half spectrum.
struct SpectralGeometry {
  std::array<std::vector<double>, 3> deriv;  ///< k_a with Nyquist zeroed
  std::vector<double> k2;                    ///< |k|², Nyquist included
  std::vector<unsigned char> mask;           ///< 2/3-rule band

  static SpectralGeometry build(const PeriodicGrid& grid);
};

/// Evaluates the dealiased nonlinear term with reusable scratch space.
class NonlinearEvaluator {
 public:
  NonlinearEvaluator(const PdeInstance& pde, const PeriodicGrid& grid);
  void evaluate(const Spectrum& state, Spectrum& out);

 private:
  PdeInstance pde_;
  PeriodicGrid grid_;
  SpectralGeometry geo_;
  std::shared_ptr<const FourierTransform> fft_;
  std::array<std::vector<double>, 5> real_;
  std::vector<Complex> spec_;
  std::vector<Complex> psi_;
  std::vector<Complex> forcing_;
};

}  // namespace bkev::detail
