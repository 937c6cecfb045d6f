#include "bkev/ladder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>

#include "bkev/error.hpp"
#include "bkev/metrics.hpp"
#include "bkev/parallel.hpp"

namespace bkev {

void LadderPolicy::validate() const {
  if (factors.empty() || factors.front() != 1.0) throw Error("ladder policy: factors must start at 1");
  for (std::size_t i = 1; i < factors.size(); ++i)
    if (!(factors[i] > factors[i - 1])) throw Error("ladder policy: factors must be strictly increasing");
  if (const auto* cfl = std::get_if<CflScaled>(&timestep_rule)) {
    if (!(cfl->target_cfl > 0.0)) throw Error("ladder policy: target_cfl must be positive");
    if (cfl->diffusion_cap && (!(cfl->diffusion_cap->coefficient > 0.0) || !(cfl->diffusion_cap->safety > 0.0)))
      throw Error("ladder policy: diffusion cap coefficient and safety must be positive");
  }
}

double courant_number(const SolverConfig& config, double u_max, double edge_length) {
  return u_max * config.dt / (edge_length / config.resolution);
}

namespace {

// Largest dt' <= dt such that T/dt' is an integer multiple of n_frames.
double round_dt_down(double dt, double horizon, int n_frames) {
  const double raw = horizon / dt;
  long steps = static_cast<long>(std::ceil(raw * (1.0 - 1e-12)));
  steps = std::max<long>(steps, n_frames);
  if (steps % n_frames != 0) steps += n_frames - steps % n_frames;
  if (std::abs(raw - static_cast<double>(steps)) <= 1e-9 * raw) return dt;
  return horizon / static_cast<double>(steps);
}

}  // namespace

std::vector<SolverConfig> build_ladder(const SolverConfig& base, const LadderPolicy& policy, double edge_length) {
  base.validate();
  policy.validate();
  std::vector<SolverConfig> out;
  for (double r : policy.factors) {
    const double exact = base.resolution / r;
    const long n = std::lround(exact);
    if (std::abs(exact - static_cast<double>(n)) > 1e-9 || n % 2 != 0)
      throw Error("build_ladder: resolution " + std::to_string(base.resolution) + " is not divisible by factor " +
                  std::to_string(r) + " into an even grid");
    if (n < kMinLadderResolution)
      throw Error("build_ladder: factor " + std::to_string(r) + " gives resolution " + std::to_string(n) + " < " +
                  std::to_string(kMinLadderResolution));
    SolverConfig c = base;
    c.resolution = static_cast<int>(n);
    c.store_resolution = std::min(base.store_resolution, c.resolution);
    double dt = base.dt;
    if (const auto* cfl = std::get_if<CflScaled>(&policy.timestep_rule)) {
      dt = base.dt * r;
      const double dx = edge_length / c.resolution;
      if (cfl->u_max > 0.0) dt = std::min(dt, cfl->target_cfl * dx / cfl->u_max);
      if (cfl->diffusion_cap) dt = std::min(dt, cfl->diffusion_cap->safety * dx * dx / cfl->diffusion_cap->coefficient);
    }
    c.dt = round_dt_down(dt, base.horizon, base.n_frames);
    c.validate();
    out.push_back(c);
  }
  return out;
}

namespace {

std::mutex& timing_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

CostMeasurement measure_cost(const PdeInstance& pde, const SolverConfig& config, int n_warmup, int n_timed,
                             std::uint64_t seed_base) {
  if (n_warmup < 1) throw Error("measure_cost: n_warmup must be >= 1");
  if (n_timed < 1) throw Error("measure_cost: n_timed must be >= 1");
  const PeriodicGrid grid = grid_for(pde, config.resolution);
  std::lock_guard lock(timing_mutex());
  std::uint64_t seed = seed_base;
  for (int i = 0; i < n_warmup; ++i, ++seed) simulate(pde, config, sample_initial_condition(pde, grid, seed), seed);
  CostMeasurement m;
  for (int i = 0; i < n_timed; ++i, ++seed) {
    const Field ic = sample_initial_condition(pde, grid, seed);
    const auto t0 = std::chrono::steady_clock::now();
    simulate(pde, config, ic, seed);
    const auto t1 = std::chrono::steady_clock::now();
    m.samples.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  double sum = 0.0;
  for (double s : m.samples) sum += s;
  m.mean_seconds = sum / static_cast<double>(m.samples.size());
  return m;
}

std::vector<Trajectory> generate_references(const PdeInstance& pde, const SolverConfig& config,
                                            std::span<const std::uint64_t> seeds, const InitialConditionOptions& ic,
                                            int threads) {
  const PeriodicGrid grid = grid_for(pde, config.resolution);
  std::vector<std::optional<Trajectory>> slots(seeds.size());
  parallel_for(seeds.size(), threads > 0 ? threads : worker_count(), [&](std::size_t i) {
    slots[i] = simulate(pde, config, sample_initial_condition(pde, grid, seeds[i], ic), seeds[i]);
  });
  std::vector<Trajectory> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

double max_abs_value(std::span<const Trajectory> trajectories) {
  double m = 0.0;
  for (const auto& t : trajectories)
    for (const auto& f : t.frames())
      for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<LadderEntry> evaluate_ladder(const PdeInstance& pde, std::span<const SolverConfig> ladder,
                                         std::span<const std::uint64_t> test_seeds,
                                         std::span<const Trajectory> reference,
                                         const LadderEvaluationOptions& options) {
  if (ladder.empty()) throw Error("evaluate_ladder: empty ladder");
  if (test_seeds.empty()) throw Error("evaluate_ladder: no test seeds");
  std::map<std::uint64_t, const Trajectory*> by_seed;
  for (const auto& r : reference) by_seed[r.seed()] = &r;
  for (auto s : test_seeds)
    if (!by_seed.contains(s)) throw Error("evaluate_ladder: missing reference trajectory for seed " + std::to_string(s));

  const int threads = options.threads > 0 ? options.threads : worker_count();
  const PeriodicGrid fine = grid_for(pde, ladder.front().resolution);
  std::vector<Field> fine_ics;
  for (auto s : test_seeds) fine_ics.push_back(sample_initial_condition(pde, fine, s, options.ic));

  std::vector<LadderEntry> entries;
  for (const auto& config : ladder) {
    LadderEntry e;
    e.config = config;
    std::vector<double> errors(test_seeds.size());
    try {
      if (!(options.reference_config && config == *options.reference_config))
        parallel_for(test_seeds.size(), threads, [&](std::size_t i) {
          const Field ic = spectral_downsample(fine_ics[i], config.resolution);
          const Trajectory t = simulate(pde, config, ic, test_seeds[i]);
          errors[i] = nrmse(t, *by_seed.at(test_seeds[i]));
        });
    } catch (const BlowUpError& err) {
      e.feasible = false;
      e.failure = err.what();
    }
    if (e.feasible) {
      e.per_seed_errors = errors;
      e.eps_avg = 0.0;
      for (double x : errors) *e.eps_avg += x;
      *e.eps_avg /= static_cast<double>(errors.size());
      e.eps_worst = *std::ranges::max_element(errors);
      e.eps_avg = std::min(*e.eps_avg, *e.eps_worst);
    }
    entries.push_back(std::move(e));
  }

  // Timing pass: strictly serial, after all concurrent work has finished.
  for (auto& e : entries) {
    if (!e.feasible) continue;
    try {
      const auto m = measure_cost(pde, e.config, options.n_warmup, options.n_timed);
      e.cost_seconds = m.mean_seconds;
      e.cost_samples = m.samples;
    } catch (const BlowUpError& err) {
      e.feasible = false;
      e.failure = err.what();
      e.eps_avg.reset();
      e.eps_worst.reset();
      e.per_seed_errors.clear();
    }
  }
  return entries;
}

}  // namespace bkev
