#include <benchmark/benchmark.h>

#include "bkev/grid.hpp"
#include "bkev/rng.hpp"

namespace {

bkev::Field random_field(int dim, int n) {
  const bkev::PeriodicGrid g(dim, n, 1.0);
  auto rng = bkev::CounterRng::derive(3, dim, n);
  std::vector<double> v(g.size());
  for (auto& x : v) x = rng.normal();
  return bkev::Field(g, 1, std::move(v));
}

void BM_ForwardInverse2D(benchmark::State& state) {
  const auto f = random_field(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto s = bkev::forward(f);
    benchmark::DoNotOptimize(bkev::inverse(s));
  }
}
BENCHMARK(BM_ForwardInverse2D)->Arg(64)->Arg(128)->Arg(256);

void BM_SpectralDownsample(benchmark::State& state) {
  const auto f = random_field(2, 256);
  const int target = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bkev::spectral_downsample(f, target));
}
BENCHMARK(BM_SpectralDownsample)->Arg(32)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
