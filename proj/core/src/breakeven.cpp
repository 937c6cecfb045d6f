#include "bkev/breakeven.hpp"

#include <cmath>
#include <limits>

#include "bkev/error.hpp"

namespace bkev {

void SurrogateRecord::validate() const {
  if (!(budget > 0.0) || !std::isfinite(budget)) throw Error("budget must be positive");
  if (!(c_inf > 0.0) || !std::isfinite(c_inf)) throw Error("c_inf must be positive");
  if (!(data_fraction >= 0.0 && data_fraction <= 1.0)) throw Error("data_frac must lie in [0, 1]");
  if (!(eps_avg >= 0.0) || !(eps_worst >= 0.0) || !std::isfinite(eps_avg) || !std::isfinite(eps_worst))
    throw Error("nrmse values must be non-negative");
}

namespace {

std::optional<double> error_of(const LadderEntry& e, MatchMode mode) {
  if (!e.feasible) return std::nullopt;
  return mode == MatchMode::Average ? e.eps_avg : e.eps_worst;
}

// True when a is preferred over b at equal or lower cost.
bool better(const LadderEntry& a, const LadderEntry& b) {
  if (a.cost_seconds != b.cost_seconds) return a.cost_seconds < b.cost_seconds;
  if (a.config.resolution != b.config.resolution) return a.config.resolution < b.config.resolution;
  return a.config.dt > b.config.dt;
}

}  // namespace

std::optional<std::size_t> error_match(std::span<const LadderEntry> ladder, double eps, MatchMode mode) {
  bool any = false;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto err = error_of(ladder[i], mode);
    if (!err) continue;
    any = true;
    if (*err <= eps && (!best || better(ladder[i], ladder[*best]))) best = i;
  }
  if (!any) throw Error("error_match: ladder has no feasible entry with measured errors");
  return best;
}

double breakeven_complexity(double budget, double c_matched, double c_inf) {
  if (!(budget > 0.0) || !(c_matched > 0.0) || !(c_inf > 0.0))
    throw Error("breakeven_complexity: budget and costs must be positive");
  if (!(c_matched > c_inf)) return std::numeric_limits<double>::infinity();
  return budget / (c_matched - c_inf);
}

std::vector<CrossoverPoint> crossover_costs(double budget, double c_inf, double c_matched,
                                            std::span<const double> n_grid) {
  std::vector<CrossoverPoint> out;
  out.reserve(n_grid.size());
  for (double n : n_grid) out.push_back({n, budget + c_inf * n, c_matched * n});
  return out;
}

namespace {

NStar n_star_for(const SurrogateRecord& r, std::span<const LadderEntry> ladder, std::optional<std::size_t> idx) {
  if (!idx) return {NStarStatus::Unmatched, 0.0};
  const double v = breakeven_complexity(r.budget, ladder[*idx].cost_seconds, r.c_inf);
  if (std::isinf(v)) return {NStarStatus::Infinite, 0.0};
  return {NStarStatus::Finite, v};
}

}  // namespace

BreakevenResult compute_breakeven(const SurrogateRecord& record, std::span<const LadderEntry> ladder) {
  record.validate();
  BreakevenResult r;
  r.model = record.model;
  r.benchmark = record.benchmark;
  r.budget = record.budget;
  r.data_fraction = record.data_fraction;
  r.eps_avg = record.eps_avg;
  r.eps_worst = record.eps_worst;
  r.c_inf = record.c_inf;
  r.matched_avg = error_match(ladder, record.eps_avg, MatchMode::Average);
  r.matched_worst = error_match(ladder, record.eps_worst, MatchMode::Worst);
  r.n_star_avg = n_star_for(record, ladder, r.matched_avg);
  r.n_star_worst = n_star_for(record, ladder, r.matched_worst);
  if (r.n_star_avg.finite() && r.n_star_worst.finite()) r.robustness_ratio = r.n_star_worst.value / r.n_star_avg.value;
  return r;
}

}  // namespace bkev
