#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bkev {

/// Loss surface L̂(N, C) = L∞ + a·N^(−α) + d·C^(−β) over training-set size N
/// and optimization seconds C.
struct ScalingFit {
  double loss_floor = 0.0;  ///< L∞
  double a = 1.0;
  double alpha = 0.5;
  double d = 1.0;
  double beta = 0.5;
  double fit_residual = 0.0;  ///< RMS of log-space residuals
  int n_points = 0;

  friend bool operator==(const ScalingFit&, const ScalingFit&) = default;
};

/// Throws unless n_data, c_train > 0.
double predict_loss(const ScalingFit& fit, double n_data, double c_train);

struct ScalingPoint {
  double n_data;
  double c_train;
  double loss;
};

struct ScalingFitOptions {
  int starts = 48;             ///< multi-start count (>= 32)
  std::uint64_t seed = 2024;   ///< start-point seed
  bool huber = false;          ///< Huber loss on log residuals instead of squares
  double huber_delta = 0.1;
  int threads = 0;             ///< 0: worker_count()
};

/// Least-squares fit of log L̂ to log loss by multi-start Nelder-Mead within
/// L∞ ∈ [0, min loss], a, d ∈ [1e−6, 1e6], α, β ∈ (0, 3]. Requires ≥ 8
/// points with ≥ 2 distinct n_data and ≥ 2 distinct c_train values.
ScalingFit fit_scaling(std::span<const ScalingPoint> points, const ScalingFitOptions& options = {});

struct BudgetAllocation {
  double budget = 0.0;
  double c_gen = 0.0;
  long n_data = 1;
  double data_cost = 0.0;  ///< c_gen · n_data
  double c_train = 0.0;    ///< budget − data_cost; data_cost + c_train == budget exactly
  double predicted_error = 0.0;
};

/// Largest n with c_gen·n < budget.
long max_affordable_trajectories(double budget, double c_gen);

/// Minimizes predict_loss(fit, n, B − c_gen·n) over integers n in
/// [1, max_affordable_trajectories] by golden-section search in log n plus
/// a neighbour check. Throws if budget <= c_gen.
BudgetAllocation budget_optimal_allocation(const ScalingFit& fit, double budget, double c_gen);

/// Allocation at each budget, for frontier plots.
std::vector<BudgetAllocation> budget_frontier(const ScalingFit& fit, std::span<const double> budgets, double c_gen);

}  // namespace bkev
