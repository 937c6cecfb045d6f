#include <gtest/gtest.h>

#include <cmath>

#include "bkev/error.hpp"
#include "bkev/ladder.hpp"
#include "bkev/metrics.hpp"

using namespace bkev;

TEST(BuildLadder, FixedDtKeepsTimestep) {
  const SolverConfig base{256, 0.1, 10.0, 50, 64, false};
  LadderPolicy p;
  p.factors = {1, 2, 4};
  const auto l = build_ladder(base, p, 50.0);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0].resolution, 256);
  EXPECT_EQ(l[1].resolution, 128);
  EXPECT_EQ(l[2].resolution, 64);
  for (const auto& c : l) {
    EXPECT_EQ(c.dt, 0.1);
    EXPECT_EQ(c.horizon, 10.0);
    EXPECT_EQ(c.n_frames, 50);
    EXPECT_EQ(c.store_resolution, 64);
  }
  p.factors = {1, 2, 4, 8};
  EXPECT_EQ(build_ladder(base, p, 50.0)[3].store_resolution, 32);
}

TEST(BuildLadder, CflScaling) {
  const SolverConfig base{256, 1e-3, 1.0, 10, 64, false};
  LadderPolicy p;
  p.factors = {1, 2};
  p.timestep_rule = CflScaled{1.0, 10.0, std::nullopt};
  const auto l = build_ladder(base, p, 2.0);
  EXPECT_DOUBLE_EQ(l[1].dt, 2e-3);
  EXPECT_EQ(l[1].resolution, 128);
  EXPECT_NO_THROW(l[1].validate());
}

TEST(BuildLadder, DiffusionCap) {
  const SolverConfig base{64, 0.01, 1.0, 1, 16, false};
  LadderPolicy p;
  p.factors = {1, 2, 4};
  p.timestep_rule = CflScaled{1.0, 100.0, DiffusionCap{1.0, 0.25}};
  const auto l = build_ladder(base, p, 2.0);
  EXPECT_EQ(l[2].resolution, 16);
  EXPECT_LE(l[2].dt, 3.90625e-3);
  // shrunk minimally so frames divide the horizon
  EXPECT_NEAR(l[2].dt, 1.0 / 256.0, 1e-15);
  for (const auto& c : l) EXPECT_NO_THROW(c.validate());
}

TEST(BuildLadder, StepAdjustment) {
  // CFL ceiling gives dt = 0.15 at n = 32; 1/0.15 steps is not an even integer
  const SolverConfig base{64, 0.1, 1.0, 2, 64, false};
  LadderPolicy p;
  p.factors = {1, 2};
  p.timestep_rule = CflScaled{1.0, 2.4, std::nullopt};
  const auto l = build_ladder(base, p, 2.0);
  EXPECT_DOUBLE_EQ(l[1].dt, 0.125);
  EXPECT_EQ(l[1].step_count(), 8);
  const SolverConfig bad{64, 0.3, 1.0, 1, 64, false};
  EXPECT_THROW(bad.step_count(), Error);
}

TEST(BuildLadder, Rejections) {
  const SolverConfig base{96, 0.1, 1.0, 1, 32, false};
  LadderPolicy p;
  p.factors = {1, 5};
  EXPECT_THROW(build_ladder(base, p, 1.0), Error);
  p.factors = {2, 4};
  EXPECT_THROW(build_ladder(base, p, 1.0), Error);
  p.factors = {1, 4, 2};
  EXPECT_THROW(build_ladder(base, p, 1.0), Error);
  p.factors = {1, 32};
  EXPECT_THROW(build_ladder(base, p, 1.0), Error);
  p.factors = {1, 3};
  EXPECT_NO_THROW(build_ladder(base, p, 1.0));
}

TEST(Courant, Definition) {
  const SolverConfig c{16, 0.01, 1.0, 1, 16, false};
  EXPECT_DOUBLE_EQ(courant_number(c, 2.0, 2.0), 2.0 * 0.01 / 0.125);
}

TEST(MeasureCost, RejectsZeroTimedRuns) {
  const SolverConfig c{16, 0.1, 1.0, 1, 16, false};
  EXPECT_THROW(measure_cost(KuramotoSivashinsky{1, 50.0}, c, 0, 0), Error);
}

TEST(MeasureCost, FinerIsSlower) {
  const KuramotoSivashinsky ks{2, 50.0};
  const SolverConfig fine{256, 0.1, 1.0, 1, 64, false};
  const SolverConfig coarse{64, 0.1, 1.0, 1, 64, false};
  const auto a = measure_cost(ks, fine, 1, 3);
  const auto b = measure_cost(ks, coarse, 1, 3);
  EXPECT_EQ(a.samples.size(), 3u);
  EXPECT_GT(a.mean_seconds, 2.0 * b.mean_seconds);
}

TEST(MeasureCost, Repeatable) {
  const KuramotoSivashinsky ks{2, 50.0};
  const SolverConfig c{128, 0.1, 3.0, 1, 64, false};
  const double a = measure_cost(ks, c, 1, 5).mean_seconds;
  const double b = measure_cost(ks, c, 1, 5).mean_seconds;
  EXPECT_LT(std::abs(a - b), 0.2 * std::max(a, b));
}

TEST(EvaluateLadder, SelfComparisonAndInfeasibility) {
  const KuramotoSivashinsky ks{1, 50.0};
  const SolverConfig base{64, 0.1, 100.0, 10, 32, false};
  LadderPolicy p;
  p.factors = {1, 2, 4};
  const auto ladder = build_ladder(base, p, 50.0);
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto refs = generate_references(ks, base, seeds);
  LadderEvaluationOptions opt;
  opt.n_timed = 1;
  const auto entries = evaluate_ladder(ks, ladder, seeds, refs, opt);
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].eps_avg, 0.0);
  EXPECT_EQ(entries[0].eps_worst, 0.0);
  EXPECT_TRUE(entries[1].feasible);
  const auto s = aggregate_errors(entries[1].per_seed_errors);
  EXPECT_EQ(entries[1].eps_avg, s.avg);
  EXPECT_EQ(entries[1].eps_worst, s.worst);
  EXPECT_LE(*entries[1].eps_avg, *entries[1].eps_worst);
  // n = 16 on L = 50 cannot hold the K-S attractor and blows up
  EXPECT_FALSE(entries[2].feasible);
  EXPECT_FALSE(entries[2].eps_avg.has_value());
  EXPECT_FALSE(entries[2].failure.empty());

  EXPECT_THROW(evaluate_ladder(ks, ladder, seeds, std::span(refs).first(2), opt), Error);

  // the base rung is the reference itself and need not be re-simulated
  opt.reference_config = base;
  const auto reused = evaluate_ladder(ks, ladder, seeds, refs, opt);
  EXPECT_EQ(reused[0].per_seed_errors, entries[0].per_seed_errors);
  EXPECT_EQ(reused[1].per_seed_errors, entries[1].per_seed_errors);
}

TEST(References, MaxAbsValue) {
  const PeriodicGrid g(1, 8, 1.0);
  std::vector<double> v(8, 0.0);
  v[5] = -3.5;
  const Trajectory t("x", {Field(g, 1, v)}, {1.0}, 0);
  EXPECT_EQ(max_abs_value(std::span(&t, 1)), 3.5);
}
