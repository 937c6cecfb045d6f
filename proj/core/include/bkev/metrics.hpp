#pragma once

#include <span>
#include <vector>

#include "bkev/grid.hpp"

namespace bkev {

/// ‖pred − ref‖₂ / ‖ref‖₂ over all frames, channels and grid points jointly.
/// Both trajectories are first downsampled to the smaller of their stored
/// resolutions. Throws on shape mismatch or a zero-norm reference.
double nrmse(const Trajectory& pred, const Trajectory& ref);

/// Same measure on raw sample arrays of equal length.
double nrmse(std::span<const double> pred, std::span<const double> ref);

/// Per-frame nRMSE curve (diagnostic only).
std::vector<double> nrmse_per_frame(const Trajectory& pred, const Trajectory& ref);

struct ErrorStats {
  std::vector<double> per_seed;
  double avg = 0.0;
  double worst = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
};

/// Quantile by linear interpolation between order statistics:
/// position q*(n-1) in the sorted sample.
double quantile(std::span<const double> values, double q);

/// Mean, max and quantiles of per-trajectory errors. Throws on an empty
/// list or any negative / non-finite entry.
ErrorStats aggregate_errors(std::span<const double> per_seed);

}  // namespace bkev
