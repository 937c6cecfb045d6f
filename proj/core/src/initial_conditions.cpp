#include <algorithm>
#include <cmath>

#include "bkev/error.hpp"
#include "bkev/fourier.hpp"
#include "bkev/rng.hpp"
#include "bkev/solvers.hpp"

namespace bkev {

namespace {

// Random trigonometric polynomial with |m_a| <= cutoff on every axis. Draws
// are made in frequency order, so the same seed gives the same function on
// every grid that resolves the band.
Field fourier_noise(const PeriodicGrid& grid, std::uint64_t seed, int cutoff) {
  const int n = grid.n();
  const int dim = grid.dim();
  const int half = n / 2 + 1;
  const int c = std::min(cutoff, n / 2 - 1);
  if (c < 1) throw Error("initial condition: cutoff must be >= 1");

  auto rng = CounterRng::derive(seed, 0x1c);
  std::vector<Complex> spec(grid.spectral_size(), 0.0);
  auto wrap = [n](int m) { return m >= 0 ? m : m + n; };
  const int lo0 = dim >= 3 ? -cutoff : 0, hi0 = dim >= 3 ? cutoff : 0;
  const int lo1 = dim >= 2 ? -cutoff : 0, hi1 = dim >= 2 ? cutoff : 0;
  for (int m0 = lo0; m0 <= hi0; ++m0) {
    for (int m1 = lo1; m1 <= hi1; ++m1) {
      for (int j = 0; j <= cutoff; ++j) {
        const double re = rng.normal();
        const double im = rng.normal();
        if (std::abs(m0) > c || std::abs(m1) > c || j > c) continue;
        if (m0 == 0 && m1 == 0 && j == 0) continue;
        const std::size_t idx = (static_cast<std::size_t>(wrap(m0)) * (dim >= 2 ? n : 1) + wrap(m1)) * half + j;
        spec[idx] = Complex(re, im);
      }
    }
  }

  // Hermitian symmetry on the j = 0 plane: X[-m] = conj(X[m]).
  const int e0 = dim >= 3 ? n : 1;
  const int e1 = dim >= 2 ? n : 1;
  for (int i0 = 0; i0 < e0; ++i0) {
    for (int i1 = 0; i1 < e1; ++i1) {
      const int p0 = (e0 - i0) % e0;
      const int p1 = (e1 - i1) % e1;
      const std::size_t self = (static_cast<std::size_t>(i0) * e1 + i1) * half;
      const std::size_t partner = (static_cast<std::size_t>(p0) * e1 + p1) * half;
      if (partner < self)
        spec[self] = std::conj(spec[partner]);
      else if (partner == self)
        spec[self] = spec[self].real();
    }
  }

  std::vector<double> values(grid.size());
  FourierTransform::for_grid(grid)->inverse(spec, values);
  double sq = 0.0;
  for (double v : values) sq += v * v;
  const double rms = std::sqrt(sq / static_cast<double>(values.size()));
  for (double& v : values) v /= rms;
  return Field(grid, 1, std::move(values));
}

Field gray_scott_patches(const PeriodicGrid& grid, std::uint64_t seed, const InitialConditionOptions& opt) {
  const std::size_t size = grid.size();
  std::vector<double> values(2 * size);
  std::fill(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(size), 1.0);
  const double L = grid.edge_length();
  const double side = opt.patch_fraction * L;
  const int n = grid.n();
  const int dim = grid.dim();
  auto rng = CounterRng::derive(seed, 0x65);

  auto inside = [&](int i, double corner) {
    const double d = std::fmod(i * grid.spacing() - corner + L, L);
    return d < side;
  };
  for (int p = 0; p < opt.patches; ++p) {
    double corner[3] = {0, 0, 0};
    for (int a = 0; a < dim; ++a) corner[a] = rng.uniform() * L;
    for (std::size_t idx = 0; idx < size; ++idx) {
      std::size_t rest = idx;
      bool in = true;
      for (int a = dim - 1; a >= 0; --a) {
        const int i = static_cast<int>(rest % n);
        rest /= n;
        in = in && inside(i, corner[a]);
      }
      if (in) {
        values[idx] = 0.5;
        values[size + idx] = 0.25;
      }
    }
  }
  return Field(grid, 2, std::move(values));
}

}  // namespace

Field sample_initial_condition(const PdeInstance& pde, const PeriodicGrid& grid, std::uint64_t seed,
                               const InitialConditionOptions& options) {
  if (grid.dim() != dimension(pde)) throw Error("sample_initial_condition: grid dimension does not match the PDE");
  if (std::holds_alternative<GrayScott>(pde)) return gray_scott_patches(grid, seed, options);
  return fourier_noise(grid, seed, options.cutoff);
}

}  // namespace bkev
