#include "bkev/pipeline.hpp"

#include <map>

#include "bkev/error.hpp"
#include "bkev/io.hpp"
#include "bkev/parallel.hpp"
#include "bkev/report.hpp"

namespace bkev {

namespace fs = std::filesystem;

CanonicalSpec pipeline_spec(const PipelineOptions& options) {
  CanonicalSpec spec = canonical_spec(options.benchmark, options.ks_dim);
  if (options.resolution) {
    spec.config.resolution = *options.resolution;
    spec.config.store_resolution = std::min(spec.config.store_resolution, *options.resolution);
  }
  spec.config.validate();
  return spec;
}

std::vector<Trajectory> load_or_generate_references(const CanonicalSpec& spec, std::span<const std::uint64_t> seeds,
                                                    const InitialConditionOptions& ic, const fs::path& dir,
                                                    const RunManifest* previous, std::vector<FileRef>& files,
                                                    int threads) {
  const std::string hash = reference_spec_hash(spec.pde, spec.config, ic);
  std::map<std::string, std::string> cached;
  if (previous && previous->spec_hash == hash)
    for (const auto& f : previous->files) cached[f.path] = f.hash;

  std::vector<std::optional<Trajectory>> slots(seeds.size());
  std::vector<std::uint64_t> missing;
  std::vector<std::size_t> missing_index;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::string rel = "references/seed-" + std::to_string(seeds[i]) + ".bkev";
    const auto it = cached.find(rel);
    if (it != cached.end() && fs::exists(dir / rel) && file_hash(dir / rel) == it->second) {
      try {
        slots[i] = read_trajectory(dir / rel);
        continue;
      } catch (const Error&) {
      }
    }
    missing.push_back(seeds[i]);
    missing_index.push_back(i);
  }
  if (!missing.empty()) {
    auto fresh = generate_references(spec.pde, spec.config, missing, ic, threads);
    for (std::size_t j = 0; j < missing.size(); ++j) {
      const fs::path rel = "references/seed-" + std::to_string(missing[j]) + ".bkev";
      write_trajectory(dir / rel, fresh[j]);
      slots[missing_index[j]] = std::move(fresh[j]);
    }
  }

  files.clear();
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::string rel = "references/seed-" + std::to_string(seeds[i]) + ".bkev";
    files.push_back({rel, file_hash(dir / rel)});
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

RunManifest run_pipeline(const PipelineOptions& options) {
  const CanonicalSpec spec = pipeline_spec(options);
  const auto records = load_records(options.records_path);
  std::optional<TimingLock> lock;
  if (options.use_timing_lock) lock.emplace();

  std::vector<std::uint64_t> seeds = options.test_seeds;
  if (seeds.empty())
    for (std::uint64_t s = 1; s <= 64; ++s) seeds.push_back(s);

  fs::create_directories(options.out_dir);
  const fs::path manifest_path = options.out_dir / "manifest.json";
  std::optional<RunManifest> previous;
  if (fs::exists(manifest_path)) {
    try {
      previous = load_manifest(manifest_path);
    } catch (const Error&) {
    }
  }

  RunManifest m;
  m.benchmark = to_string(options.benchmark);
  m.spec_hash = reference_spec_hash(spec.pde, spec.config, options.ic);
  m.base_config = spec.config;
  m.test_seeds = seeds;
  const auto refs = load_or_generate_references(spec, seeds, options.ic, options.out_dir,
                                                previous ? &*previous : nullptr, m.files, options.threads);

  m.policy = options.policy;
  if (auto* cfl = std::get_if<CflScaled>(&m.policy.timestep_rule); cfl && !(cfl->u_max > 0.0))
    cfl->u_max = max_abs_value(refs);
  const auto ladder = build_ladder(spec.config, m.policy, edge_length(spec.pde));
  LadderEvaluationOptions eval;
  eval.n_warmup = options.n_warmup;
  eval.n_timed = options.n_timed;
  eval.threads = options.threads;
  eval.ic = options.ic;
  eval.reference_config = spec.config;
  m.ladder = evaluate_ladder(spec.pde, ladder, seeds, refs, eval);

  for (const auto& r : records) {
    Benchmark b;
    try {
      b = parse_benchmark(r.benchmark);
    } catch (const Error&) {
      continue;
    }
    if (b != options.benchmark) continue;
    m.records.push_back(r);
    m.results.push_back(compute_breakeven(r, m.ladder));
  }
  m.machine = machine_descriptor();
  m.version = toolkit_version();

  save_manifest(manifest_path, m);
  for (auto f : {ReportFormat::Markdown, ReportFormat::Csv, ReportFormat::PlotData}) emit_report(m, f, options.out_dir);
  return m;
}

}  // namespace bkev
