#include <benchmark/benchmark.h>

#include <vector>

#include "bkev/scaling.hpp"

namespace {

bkev::ScalingFit surface() {
  bkev::ScalingFit f;
  f.loss_floor = 0.01;
  f.a = 1.0;
  f.alpha = 0.5;
  f.d = 10.0;
  f.beta = 0.3;
  return f;
}

void BM_FitScaling(benchmark::State& state) {
  const auto truth = surface();
  std::vector<bkev::ScalingPoint> pts;
  for (double n : {10.0, 100.0, 1e3, 1e4, 1e5})
    for (double c : {10.0, 100.0, 1e3, 1e4, 1e5}) pts.push_back({n, c, bkev::predict_loss(truth, n, c)});
  bkev::ScalingFitOptions opt;
  opt.starts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bkev::fit_scaling(pts, opt));
}
BENCHMARK(BM_FitScaling)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_BudgetAllocation(benchmark::State& state) {
  const auto f = surface();
  for (auto _ : state) benchmark::DoNotOptimize(bkev::budget_optimal_allocation(f, 8000.0, 0.475));
}
BENCHMARK(BM_BudgetAllocation);

}  // namespace
