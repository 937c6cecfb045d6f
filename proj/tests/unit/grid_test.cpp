#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bkev/error.hpp"
#include "bkev/grid.hpp"
#include "oracles.hpp"

using namespace bkev;
using std::numbers::pi;

namespace {

Field random_field(const PeriodicGrid& g, int channels, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(g.size() * static_cast<std::size_t>(channels));
  for (auto& x : v) x = nd(rng);
  return Field(g, channels, std::move(v));
}

// Band-limited trig polynomial sampled on a grid of size n.
std::vector<double> trig_poly(int n, double L) {
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = L * i / n, y = L * j / n, w = 2 * pi / L;
      v[static_cast<std::size_t>(i) * n + j] = 0.3 + std::cos(3 * w * x) * std::sin(7 * w * y) +
                                                0.5 * std::sin(10 * w * x + 0.2) - 0.25 * std::cos(w * (9 * x - 4 * y));
    }
  return v;
}

}  // namespace

TEST(PeriodicGrid, RejectsBadShapes) {
  EXPECT_THROW(PeriodicGrid(0, 8, 1.0), Error);
  EXPECT_THROW(PeriodicGrid(4, 8, 1.0), Error);
  EXPECT_THROW(PeriodicGrid(1, 2, 1.0), Error);
  EXPECT_THROW(PeriodicGrid(1, 7, 1.0), Error);
  EXPECT_THROW(PeriodicGrid(1, 8, 0.0), Error);
  EXPECT_THROW(PeriodicGrid(1, 8, std::numeric_limits<double>::infinity()), Error);
  const PeriodicGrid g(3, 8, 2.0);
  EXPECT_EQ(g.size(), 512u);
  EXPECT_EQ(g.spectral_size(), 8u * 8u * 5u);
}

TEST(Wavenumbers, UnitPeriodOrdering) {
  const auto k = wavenumbers(PeriodicGrid(1, 4, 2 * pi));
  ASSERT_EQ(k.size(), 1u);
  // one-dimensional grids use the half axis: m = 0, 1, 2
  ASSERT_EQ(k[0].size(), 3u);
  EXPECT_DOUBLE_EQ(k[0][0], 0.0);
  EXPECT_DOUBLE_EQ(k[0][1], 1.0);
  EXPECT_DOUBLE_EQ(k[0][2], 2.0);
  EXPECT_EQ(signed_frequency(0, 4), 0);
  EXPECT_EQ(signed_frequency(1, 4), 1);
  EXPECT_EQ(signed_frequency(2, 4), -2);
  EXPECT_EQ(signed_frequency(3, 4), -1);
}

TEST(Wavenumbers, FullAxisMatchesDefinition) {
  const auto k = wavenumbers(PeriodicGrid(2, 4, 2.0));
  ASSERT_EQ(k[0].size(), 4u);
  EXPECT_DOUBLE_EQ(k[0][0], 0.0);
  EXPECT_DOUBLE_EQ(k[0][1], pi);
  EXPECT_DOUBLE_EQ(k[0][2], -2 * pi);
  EXPECT_DOUBLE_EQ(k[0][3], -pi);
  ASSERT_EQ(k[1].size(), 3u);

  const auto k8 = wavenumbers(PeriodicGrid(2, 8, 50.0));
  const int expect[8] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(k8[0][i], 2 * pi * expect[i] / 50.0);
  for (int i = 0; i <= 4; ++i) EXPECT_DOUBLE_EQ(k8[1][i], 2 * pi * i / 50.0);
  // antisymmetric about zero apart from Nyquist
  for (int i = 1; i < 4; ++i) EXPECT_EQ(k8[0][i], -k8[0][8 - i]);
}

TEST(Transform, ConstantHasOnlyZeroMode) {
  const PeriodicGrid g(2, 8, 1.0);
  const Field f(g, 1, std::vector<double>(g.size(), 2.5));
  const auto s = forward(f);
  EXPECT_DOUBLE_EQ(s.coeffs[0].real(), 2.5 * 64);
  for (std::size_t i = 1; i < s.coeffs.size(); ++i) EXPECT_EQ(std::abs(s.coeffs[i]), 0.0);
}

TEST(Transform, RoundTripAllDims) {
  for (int dim = 1; dim <= 3; ++dim) {
    const PeriodicGrid g(dim, dim == 3 ? 8 : 16, 3.0);
    const auto f = random_field(g, 2, 17u + dim);
    const auto back = inverse(forward(f));
    double num = 0, den = 0;
    for (std::size_t i = 0; i < f.values().size(); ++i) {
      num += std::pow(back.values()[i] - f.values()[i], 2);
      den += std::pow(f.values()[i], 2);
    }
    EXPECT_LT(std::sqrt(num / den), 1e-12) << "dim " << dim;
  }
}

TEST(Transform, MatchesDirectDft1D) {
  const PeriodicGrid g(1, 16, 1.0);
  const auto f = random_field(g, 1, 5);
  std::vector<oracle::cplx> x(f.values().begin(), f.values().end());
  const auto ref = oracle::dft(x);
  const auto s = forward(f);
  for (int m = 0; m <= 8; ++m) EXPECT_NEAR(std::abs(s.coeffs[m] - ref[m]), 0.0, 1e-12);
}

TEST(Transform, Parseval) {
  for (int dim = 1; dim <= 3; ++dim) {
    const PeriodicGrid g(dim, 8, 1.0);
    const auto f = random_field(g, 1, 40u + dim);
    // direct sum of |x|^2 against the spectral sum
    double direct = 0;
    for (double v : f.values()) direct += v * v;
    EXPECT_NEAR(spectral_energy(forward(f)), direct, 1e-10 * direct);
    EXPECT_NEAR(energy(f), direct, 1e-12 * direct);
  }
}

TEST(Transform, RejectsNonFinite) {
  const PeriodicGrid g(1, 8, 1.0);
  std::vector<double> v(8, 0.0);
  v[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Field(g, 1, v), Error);
  EXPECT_THROW(Field(g, 2, std::vector<double>(8, 0.0)), Error);
}

TEST(Downsample, ConstantStaysConstant) {
  const PeriodicGrid g(2, 256, 2.0);
  const Field f(g, 1, std::vector<double>(g.size(), -1.75));
  const auto d = spectral_downsample(f, 64);
  EXPECT_EQ(d.grid().n(), 64);
  for (double v : d.values()) EXPECT_NEAR(v, -1.75, 1e-13);
}

TEST(Downsample, BandLimitedExactAtSharedPoints) {
  const double L = 2.0;
  const PeriodicGrid g(2, 256, L);
  const Field f(g, 1, trig_poly(256, L));
  const auto d = spectral_downsample(f, 64);
  const auto expect = trig_poly(64, L);
  for (std::size_t i = 0; i < expect.size(); ++i) ASSERT_NEAR(d.values()[i], expect[i], 1e-10);
}

TEST(Downsample, IdentityAndIdempotence) {
  const PeriodicGrid g(2, 32, 1.0);
  const auto f = random_field(g, 2, 9);
  const auto same = spectral_downsample(f, 32);
  for (std::size_t i = 0; i < f.values().size(); ++i) EXPECT_NEAR(same.values()[i], f.values()[i], 1e-12);
  const auto once = spectral_downsample(f, 16);
  const auto twice = spectral_downsample(once, 16);
  for (std::size_t i = 0; i < once.values().size(); ++i) EXPECT_NEAR(once.values()[i], twice.values()[i], 1e-13);
  EXPECT_THROW(spectral_downsample(f, 64), Error);
  EXPECT_THROW(spectral_downsample(f, 6 + 1), Error);
}

TEST(Downsample, ZeroesTargetNyquist) {
  const PeriodicGrid g(1, 32, 1.0);
  std::vector<double> v(32);
  for (int i = 0; i < 32; ++i) v[i] = std::cos(2 * pi * 8 * i / 32.0) + std::cos(2 * pi * 3 * i / 32.0);
  const auto d = spectral_downsample(Field(g, 1, v), 16);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(d.values()[i], std::cos(2 * pi * 3 * i / 16.0), 1e-12);
}

TEST(Downsample, PreservesRetainedEnergy3D) {
  const PeriodicGrid g(3, 16, 1.0);
  const auto f = random_field(g, 1, 77);
  const auto full = forward(f);
  const auto kept = downsample_spectrum(full, 8);
  const auto d = inverse(kept);
  // mean square on the coarse grid equals retained spectral energy / N_coarse
  EXPECT_NEAR(energy(d), spectral_energy(kept), 1e-10 * energy(d));
}

TEST(Trajectory, Invariants) {
  const PeriodicGrid g(1, 8, 1.0);
  const Field f(g, 1);
  EXPECT_THROW(Trajectory("x", {}, {}, 0), Error);
  EXPECT_THROW(Trajectory("x", {f, f}, {1.0}, 0), Error);
  EXPECT_THROW(Trajectory("x", {f, f}, {1.0, 1.0}, 0), Error);
  EXPECT_THROW(Trajectory("x", {f}, {-1.0}, 0), Error);
  EXPECT_THROW(Trajectory("x", {f, Field(g, 2)}, {0.0, 1.0}, 0), Error);
  const Trajectory t("x", {f, f}, {0.0, 0.5}, 3);
  EXPECT_EQ(t.downsampled(4).grid().n(), 4);
  EXPECT_EQ(t.downsampled(4).seed(), 3u);
}
