#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bkev/ladder.hpp"

namespace bkev {

/// One trained surrogate at one budget.
struct SurrogateRecord {
  std::string model;
  std::string benchmark;
  double budget = 0.0;         ///< up-front seconds (generation + training)
  double data_fraction = 0.0;  ///< share of the budget spent on generation
  double eps_avg = 0.0;
  double eps_worst = 0.0;
  double c_inf = 0.0;  ///< seconds per inference trajectory

  /// Throws unless budget, c_inf > 0, data_fraction ∈ [0, 1], errors ≥ 0.
  void validate() const;
  friend bool operator==(const SurrogateRecord&, const SurrogateRecord&) = default;
};

enum class MatchMode { Average, Worst };

/// Cheapest feasible entry whose error (per mode) is <= eps. Ties go to the
/// coarser resolution, then the larger dt. Throws if the ladder holds no
/// feasible entry with measured errors.
std::optional<std::size_t> error_match(std::span<const LadderEntry> ladder, double eps, MatchMode mode);

/// B / (c_matched − c_inf), or +inf when c_matched <= c_inf.
double breakeven_complexity(double budget, double c_matched, double c_inf);

struct CrossoverPoint {
  double n;
  double surrogate_cost;  ///< B + c_inf·n
  double classical_cost;  ///< c_matched·n
};

std::vector<CrossoverPoint> crossover_costs(double budget, double c_inf, double c_matched,
                                            std::span<const double> n_grid);

enum class NStarStatus { Finite, Infinite, Unmatched };

struct NStar {
  NStarStatus status = NStarStatus::Unmatched;
  double value = 0.0;  ///< meaningful only when Finite

  bool finite() const noexcept { return status == NStarStatus::Finite; }
  friend bool operator==(const NStar&, const NStar&) = default;
};

struct BreakevenResult {
  std::string model;
  std::string benchmark;
  double budget = 0.0;
  double data_fraction = 0.0;
  double eps_avg = 0.0;
  double eps_worst = 0.0;
  double c_inf = 0.0;
  std::optional<std::size_t> matched_avg;  ///< ladder index
  std::optional<std::size_t> matched_worst;
  NStar n_star_avg;
  NStar n_star_worst;
  std::optional<double> robustness_ratio;  ///< worst / avg, when both finite

  friend bool operator==(const BreakevenResult&, const BreakevenResult&) = default;
};

/// Average case matches eps_avg against ladder eps_avg; worst case matches
/// eps_worst against ladder eps_worst.
BreakevenResult compute_breakeven(const SurrogateRecord& record, std::span<const LadderEntry> ladder);

}  // namespace bkev
