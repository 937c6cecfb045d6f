#include <gtest/gtest.h>

#include <filesystem>

#include <unistd.h>

#include "bkev/error.hpp"
#include "bkev/io.hpp"
#include "bkev/pipeline.hpp"
#include "bkev/report.hpp"

using namespace bkev;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("bkev-pipeline-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

PipelineOptions small_options(const fs::path& dir) {
  PipelineOptions o;
  o.benchmark = Benchmark::NavierStokes;
  o.resolution = 32;
  o.policy.factors = {1, 2};
  o.test_seeds = {1, 2};
  o.n_warmup = 1;
  o.n_timed = 1;
  o.out_dir = dir;
  o.records_path = dir / "records.csv";
  write_text(o.records_path, std::string(kRecordsHeader) +
                                 "\n"
                                 "Loose,NS,1000,0.1,0.9,0.9,0.000001\n"
                                 "Costly,NS,1000,0.1,0.9,0.9,1000\n"
                                 "Other,GS,1000,0.1,0.9,0.9,0.001\n");
  return o;
}

}  // namespace

TEST(Pipeline, SpecOverride) {
  PipelineOptions o;
  o.benchmark = Benchmark::GrayScott;
  o.resolution = 32;
  const auto s = pipeline_spec(o);
  EXPECT_EQ(s.config.resolution, 32);
  EXPECT_EQ(s.config.store_resolution, 32);
  EXPECT_EQ(s.config.dt, 0.5);
}

TEST(Pipeline, EndToEndAndCache) {
  const auto dir = scratch("e2e");
  const auto o = small_options(dir);
  const auto m = run_pipeline(o);
  ASSERT_EQ(m.ladder.size(), 2u);
  EXPECT_EQ(m.ladder[0].eps_avg, 0.0);
  // the GS record is filtered out
  ASSERT_EQ(m.results.size(), 2u);
  // loose error matches the cheapest rung
  EXPECT_EQ(m.results[0].matched_avg, error_match(m.ladder, 0.9, MatchMode::Average));
  EXPECT_EQ(m.results[0].n_star_avg.status, NStarStatus::Finite);
  EXPECT_EQ(m.results[1].n_star_avg.status, NStarStatus::Infinite);
  EXPECT_EQ(load_manifest(dir / "manifest.json"), m);
  for (auto f : {"report.md", "report.csv", "plot_ladder.csv", "plot_crossover.csv", "plot_budget_nstar.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  EXPECT_TRUE(verify_manifest_files(m, dir).empty());

  const auto before = fs::last_write_time(dir / m.files[0].path);
  const auto again = run_pipeline(o);
  EXPECT_EQ(fs::last_write_time(dir / m.files[0].path), before);
  EXPECT_EQ(again.files, m.files);
  EXPECT_EQ(again.spec_hash, m.spec_hash);

  // a corrupted cache entry is regenerated
  write_text(dir / m.files[1].path, "garbage");
  const auto third = run_pipeline(o);
  EXPECT_EQ(third.files, m.files);
}

TEST(Pipeline, RefusesWhileAnotherProcessTimes) {
  const auto dir = scratch("locked");
  const auto o = small_options(dir);
  TimingLock held;
  EXPECT_THROW(run_pipeline(o), Error);
}

TEST(Pipeline, ReferenceHashDependsOnInputs) {
  const auto a = canonical_spec(Benchmark::GrayScott);
  auto b = a;
  b.config.dt = 0.25;
  EXPECT_NE(reference_spec_hash(a.pde, a.config, {}), reference_spec_hash(b.pde, b.config, {}));
  InitialConditionOptions ic;
  ic.patches = 4;
  EXPECT_NE(reference_spec_hash(a.pde, a.config, {}), reference_spec_hash(a.pde, a.config, ic));
  EXPECT_EQ(reference_spec_hash(a.pde, a.config, {}), reference_spec_hash(a.pde, a.config, {}));
}
