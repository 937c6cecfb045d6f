#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bkev/error.hpp"
#include "bkev/metrics.hpp"
#include "bkev/rng.hpp"

using namespace bkev;

namespace {

Trajectory make(int n, std::vector<std::vector<double>> frames) {
  const PeriodicGrid g(1, n, 1.0);
  std::vector<Field> fs;
  std::vector<double> times;
  for (auto& f : frames) {
    fs.emplace_back(g, 1, std::move(f));
    times.push_back(static_cast<double>(times.size() + 1));
  }
  return Trajectory("t", std::move(fs), std::move(times), 0);
}

}  // namespace

TEST(Nrmse, TrivialCases) {
  const std::vector<double> u{1, -2, 3, 0.5, 0, 1, 2, -1};
  std::vector<double> twice(u), zero(u.size(), 0.0);
  for (auto& x : twice) x *= 2;
  const auto ref = make(8, {u, u});
  EXPECT_EQ(nrmse(ref, ref), 0.0);
  EXPECT_DOUBLE_EQ(nrmse(make(8, {zero, zero}), ref), 1.0);
  EXPECT_DOUBLE_EQ(nrmse(make(8, {twice, twice}), ref), 1.0);
  EXPECT_THROW(nrmse(ref, make(8, {zero, zero})), Error);
  EXPECT_THROW(nrmse(make(8, {u}), ref), Error);
}

TEST(Nrmse, JointNormNotFrameAverage) {
  // frame 1 perfect, frame 2 off by its own size; the joint norm weighs by energy
  const std::vector<double> small(8, 0.1), big(8, 10.0), zero(8, 0.0);
  const double e = nrmse(make(8, {zero, big}), make(8, {small, big}));
  const double expect = std::sqrt(8 * 0.01 / (8 * 0.01 + 8 * 100.0));
  EXPECT_NEAR(e, expect, 1e-15);
  const auto curve = nrmse_per_frame(make(8, {zero, big}), make(8, {small, big}));
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_DOUBLE_EQ(curve[0], 1.0);
  EXPECT_DOUBLE_EQ(curve[1], 0.0);
}

TEST(Nrmse, ComparesAtCoarserResolution) {
  std::vector<double> fine(16), coarse(8);
  for (int i = 0; i < 16; ++i) fine[i] = std::cos(2 * std::numbers::pi * i / 16);
  for (int i = 0; i < 8; ++i) coarse[i] = std::cos(2 * std::numbers::pi * i / 8);
  EXPECT_LT(nrmse(make(8, {coarse}), make(16, {fine})), 1e-14);
}

TEST(Nrmse, RawArrays) {
  const std::vector<double> a{3, 4}, b{0, 0};
  EXPECT_DOUBLE_EQ(nrmse(b, a), 1.0);
  EXPECT_THROW(nrmse(a, std::vector<double>{1, 2, 3}), Error);
}

TEST(Aggregate, Basic) {
  const std::vector<double> e{0.1, 0.3, 0.2};
  const auto s = aggregate_errors(e);
  EXPECT_NEAR(s.avg, 0.2, 1e-16);
  EXPECT_EQ(s.worst, 0.3);
  EXPECT_NEAR(s.p50, 0.2, 1e-16);
  const std::vector<double> one{0.42};
  const auto t = aggregate_errors(one);
  EXPECT_EQ(t.avg, 0.42);
  EXPECT_EQ(t.worst, 0.42);
  EXPECT_EQ(t.p99, 0.42);
  EXPECT_THROW(aggregate_errors(std::vector<double>{}), Error);
  EXPECT_THROW(aggregate_errors(std::vector<double>{0.1, -0.2}), Error);
  EXPECT_THROW(aggregate_errors(std::vector<double>{std::numeric_limits<double>::infinity()}), Error);
}

TEST(Aggregate, Quantiles) {
  const std::vector<double> v{4, 1, 3, 2, 5};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.9), 4.6);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 5.0);
}

TEST(Aggregate, FixedSeedUniformSample) {
  auto rng = CounterRng::derive(20240601);
  std::vector<double> v(1000);
  for (auto& x : v) x = rng.uniform();
  const auto s = aggregate_errors(v);
  EXPECT_GE(s.avg, 0.45);
  EXPECT_LE(s.avg, 0.55);
  EXPECT_GE(s.worst, 0.99);
  EXPECT_LE(s.p50, s.p90);
  EXPECT_LE(s.p90, s.p99);
  EXPECT_LE(s.p99, s.worst);
}
