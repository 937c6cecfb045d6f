#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "bkev/breakeven.hpp"
#include "bkev/error.hpp"

using namespace bkev;

namespace {

LadderEntry entry(int n, double cost, double eps_avg, double eps_worst) {
  LadderEntry e;
  e.config.resolution = n;
  e.config.dt = 0.1;
  e.cost_seconds = cost;
  e.eps_avg = eps_avg;
  e.eps_worst = eps_worst;
  return e;
}

std::vector<LadderEntry> simple_ladder() {
  return {entry(256, 1.0, 0.01, 0.02), entry(128, 0.5, 0.05, 0.1), entry(64, 0.25, 0.2, 0.4)};
}

}  // namespace

TEST(ErrorMatch, CheapestQualifying) {
  const auto l = simple_ladder();
  EXPECT_EQ(error_match(l, 0.05, MatchMode::Average), 1u);
  EXPECT_EQ(error_match(l, 0.005, MatchMode::Average), std::nullopt);
  EXPECT_EQ(error_match(l, 1.0, MatchMode::Average), 2u);
  EXPECT_EQ(error_match(l, 0.05, MatchMode::Worst), 0u);
}

TEST(ErrorMatch, TieBreaks) {
  auto l = simple_ladder();
  l.push_back(entry(96, 0.5, 0.04, 0.04));
  EXPECT_EQ(error_match(l, 0.05, MatchMode::Average), 3u);
  auto m = simple_ladder();
  m.push_back(entry(128, 0.5, 0.04, 0.04));
  m.back().config.dt = 0.2;
  EXPECT_EQ(error_match(m, 0.05, MatchMode::Average), 3u);
}

TEST(ErrorMatch, SkipsInfeasibleAndRejectsEmpty) {
  auto l = simple_ladder();
  l[2].feasible = false;
  l[2].eps_avg.reset();
  l[2].eps_worst.reset();
  EXPECT_EQ(error_match(l, 1.0, MatchMode::Average), 1u);
  EXPECT_THROW(error_match(std::vector<LadderEntry>{}, 1.0, MatchMode::Average), Error);
  for (auto& e : l) e.feasible = false;
  EXPECT_THROW(error_match(l, 1.0, MatchMode::Average), Error);
}

TEST(BreakevenComplexity, Formula) {
  EXPECT_DOUBLE_EQ(breakeven_complexity(1000, 1.0, 0.5), 2000.0);
  EXPECT_TRUE(std::isinf(breakeven_complexity(1000, 0.5, 0.5)));
  EXPECT_TRUE(std::isinf(breakeven_complexity(1000, 0.4, 0.5)));
  EXPECT_THROW(breakeven_complexity(0, 1.0, 0.5), Error);
  EXPECT_THROW(breakeven_complexity(10, -1.0, 0.5), Error);
  const double gap = 1000.0 / 32158.0;
  EXPECT_NEAR(gap, 0.03110, 5e-6);
  EXPECT_NEAR(breakeven_complexity(1000, 0.1 + gap, 0.1), 32158.0, 1.0);
}

TEST(Crossover, Curves) {
  const std::vector<double> grid{0.0, 1000.0, 2000.0};
  const auto c = crossover_costs(1000, 0.5, 1.0, grid);
  EXPECT_EQ(c[0].surrogate_cost, 1000.0);
  EXPECT_EQ(c[0].classical_cost, 0.0);
  EXPECT_EQ(c[1].surrogate_cost, 1500.0);
  EXPECT_EQ(c[1].classical_cost, 1000.0);
  EXPECT_EQ(c[2].surrogate_cost, c[2].classical_cost);
  EXPECT_EQ(c[2].classical_cost, 1000.0 * 1.0 / 0.5);
}

TEST(ComputeBreakeven, BothCases) {
  const auto l = simple_ladder();
  SurrogateRecord r{"FNO", "GS", 1000.0, 0.5, 0.06, 0.3, 0.05};
  const auto res = compute_breakeven(r, l);
  EXPECT_EQ(res.matched_avg, 1u);
  EXPECT_EQ(res.matched_worst, 1u);
  ASSERT_TRUE(res.n_star_avg.finite());
  EXPECT_DOUBLE_EQ(res.n_star_avg.value, 1000.0 / 0.45);
  ASSERT_TRUE(res.robustness_ratio.has_value());
  EXPECT_DOUBLE_EQ(*res.robustness_ratio, 1.0);

  r.eps_worst = 0.001;
  const auto un = compute_breakeven(r, l);
  EXPECT_EQ(un.n_star_worst.status, NStarStatus::Unmatched);
  EXPECT_FALSE(un.robustness_ratio.has_value());

  r.c_inf = 2.0;
  const auto inf = compute_breakeven(r, l);
  EXPECT_EQ(inf.n_star_avg.status, NStarStatus::Infinite);

  r.budget = -1.0;
  EXPECT_THROW(compute_breakeven(r, l), Error);
}

TEST(SurrogateRecord, Validation) {
  SurrogateRecord r{"m", "NS", 10.0, 0.5, 0.1, 0.2, 0.01};
  EXPECT_NO_THROW(r.validate());
  r.data_fraction = 1.5;
  EXPECT_THROW(r.validate(), Error);
  r.data_fraction = 0.5;
  r.eps_avg = -0.1;
  EXPECT_THROW(r.validate(), Error);
  r.eps_avg = 0.1;
  r.c_inf = 0.0;
  EXPECT_THROW(r.validate(), Error);
}
