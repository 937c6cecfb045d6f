#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "bkev/ladder.hpp"
#include "bkev/manifest.hpp"
#include "bkev/solvers.hpp"

namespace bkev {

struct PipelineOptions {
  Benchmark benchmark = Benchmark::GrayScott;
  int ks_dim = 2;
  /// Base (reference) resolution; the canonical 256 when absent.
  std::optional<int> resolution;
  LadderPolicy policy;
  std::filesystem::path records_path;
  std::filesystem::path out_dir = "bkev-run";
  std::vector<std::uint64_t> test_seeds;  ///< empty: seeds 1..64
  int n_warmup = 1;
  int n_timed = 3;
  int threads = 0;
  bool use_timing_lock = true;
  InitialConditionOptions ic;
};

/// Canonical spec of the benchmark with the resolution override applied.
CanonicalSpec pipeline_spec(const PipelineOptions& options);

/// Reference trajectories under `dir`/references, reusing files recorded in
/// `previous` whose spec hash and content hash still match. Returns the
/// trajectories and fills `files` with their references.
std::vector<Trajectory> load_or_generate_references(const CanonicalSpec& spec, std::span<const std::uint64_t> seeds,
                                                    const InitialConditionOptions& ic, const std::filesystem::path& dir,
                                                    const RunManifest* previous, std::vector<FileRef>& files,
                                                    int threads = 0);

/// References, ladder (costs timed serially under the timing lock), matching
/// and N* for every record of this benchmark; writes manifest.json and the
/// markdown, CSV and plot-data reports into out_dir.
RunManifest run_pipeline(const PipelineOptions& options);

}  // namespace bkev
