#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bkev/grid.hpp"
#include "bkev/solvers.hpp"

namespace bkev {

/// Keep the base timestep at every rung (the usual choice for exponential
/// integrators, whose stability does not hinge on a CFL limit).
struct FixedDt {
  friend bool operator==(const FixedDt&, const FixedDt&) = default;
};

/// dt ≤ safety · Δx² / coefficient.
struct DiffusionCap {
  double coefficient = 1.0;
  double safety = 0.25;
  friend bool operator==(const DiffusionCap&, const DiffusionCap&) = default;
};

/// Scale dt with Δx so u_max·dt/Δx stays constant. `target_cfl` is a ceiling
/// on that number; u_max <= 0 means "measure it from the reference data".
struct CflScaled {
  double u_max = 0.0;
  double target_cfl = 1.0;
  std::optional<DiffusionCap> diffusion_cap;
  friend bool operator==(const CflScaled&, const CflScaled&) = default;
};

using TimestepRule = std::variant<FixedDt, CflScaled>;

struct LadderPolicy {
  std::vector<double> factors{1.0, 2.0, 4.0, 8.0};
  TimestepRule timestep_rule = FixedDt{};

  /// Factors strictly increasing from exactly 1; target_cfl > 0.
  void validate() const;
  friend bool operator==(const LadderPolicy&, const LadderPolicy&) = default;
};

/// Smallest resolution a rung may have.
inline constexpr int kMinLadderResolution = 8;

/// One configuration per coarsening factor: resolution n/r, dt per the rule,
/// dt then shrunk minimally so T/dt is an integer multiple of n_frames;
/// store_resolution clipped to the rung resolution.
std::vector<SolverConfig> build_ladder(const SolverConfig& base, const LadderPolicy& policy, double edge_length);

/// Courant number u_max·dt/Δx of one configuration.
double courant_number(const SolverConfig& config, double u_max, double edge_length);

struct CostMeasurement {
  double mean_seconds = 0.0;
  std::vector<double> samples;
};

/// Wallclock seconds per trajectory: n_warmup untimed runs followed by
/// n_timed timed runs, each from a fresh seeded initial condition.
///
/// Runs hold a process-wide timing lock, so two measurements never overlap
/// inside one process; callers must not run other heavy work concurrently.
/// Initial-condition sampling is not timed. BlowUpError propagates.
CostMeasurement measure_cost(const PdeInstance& pde, const SolverConfig& config, int n_warmup, int n_timed,
                             std::uint64_t seed_base = 1'000'000);

struct LadderEntry {
  SolverConfig config;
  bool feasible = true;
  double cost_seconds = 0.0;
  std::vector<double> cost_samples;
  std::optional<double> eps_avg;
  std::optional<double> eps_worst;
  std::vector<double> per_seed_errors;
  std::string failure;  ///< blow-up message for infeasible entries

  friend bool operator==(const LadderEntry&, const LadderEntry&) = default;
};

struct LadderEvaluationOptions {
  int n_warmup = 1;
  int n_timed = 3;
  int threads = 0;  ///< 0: worker_count()
  InitialConditionOptions ic;
  /// Config the reference trajectories were simulated with (same ic options,
  /// full precision). A rung equal to it is scored 0 without re-simulating.
  std::optional<SolverConfig> reference_config;
};

/// Simulates every test seed at every rung from the fine-grid initial
/// condition (sampled at ladder[0].resolution, spectrally downsampled to the
/// rung), scores it against the matching reference trajectory, and measures
/// the rung's cost. Seeds run concurrently; timing runs afterwards, serially.
std::vector<LadderEntry> evaluate_ladder(const PdeInstance& pde, std::span<const SolverConfig> ladder,
                                         std::span<const std::uint64_t> test_seeds,
                                         std::span<const Trajectory> reference,
                                         const LadderEvaluationOptions& options = {});

/// Reference trajectories for the given seeds at `config` (seeds in parallel).
std::vector<Trajectory> generate_references(const PdeInstance& pde, const SolverConfig& config,
                                            std::span<const std::uint64_t> seeds,
                                            const InitialConditionOptions& ic = {}, int threads = 0);

/// max |u| over all frames of the given trajectories.
double max_abs_value(std::span<const Trajectory> trajectories);

}  // namespace bkev
