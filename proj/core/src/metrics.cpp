#include "bkev/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bkev/error.hpp"

namespace bkev {

double nrmse(std::span<const double> pred, std::span<const double> ref) {
  if (pred.size() != ref.size()) throw Error("nrmse: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = pred[i] - ref[i];
    num += d * d;
    den += ref[i] * ref[i];
  }
  if (!(den > 0.0)) throw Error("nrmse: reference has zero norm");
  return std::sqrt(num / den);
}

namespace {

void check_comparable(const Trajectory& pred, const Trajectory& ref) {
  if (pred.frames().size() != ref.frames().size()) throw Error("nrmse: frame count mismatch");
  if (pred.channels() != ref.channels()) throw Error("nrmse: channel count mismatch");
  if (pred.grid().dim() != ref.grid().dim() || pred.grid().edge_length() != ref.grid().edge_length())
    throw Error("nrmse: domain mismatch");
}

std::pair<Trajectory, Trajectory> to_common(const Trajectory& pred, const Trajectory& ref) {
  const int n = std::min(pred.grid().n(), ref.grid().n());
  return {pred.grid().n() == n ? pred : pred.downsampled(n), ref.grid().n() == n ? ref : ref.downsampled(n)};
}

}  // namespace

double nrmse(const Trajectory& pred, const Trajectory& ref) {
  check_comparable(pred, ref);
  const auto [p, r] = to_common(pred, ref);
  double num = 0.0, den = 0.0;
  for (std::size_t f = 0; f < r.frames().size(); ++f) {
    auto pv = p.frames()[f].values();
    auto rv = r.frames()[f].values();
    for (std::size_t i = 0; i < rv.size(); ++i) {
      const double d = pv[i] - rv[i];
      num += d * d;
      den += rv[i] * rv[i];
    }
  }
  if (!(den > 0.0)) throw Error("nrmse: reference has zero norm");
  return std::sqrt(num / den);
}

std::vector<double> nrmse_per_frame(const Trajectory& pred, const Trajectory& ref) {
  check_comparable(pred, ref);
  const auto [p, r] = to_common(pred, ref);
  std::vector<double> out;
  for (std::size_t f = 0; f < r.frames().size(); ++f) out.push_back(nrmse(p.frames()[f].values(), r.frames()[f].values()));
  return out;
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw Error("quantile: empty sample");
  std::vector<double> s(values.begin(), values.end());
  std::ranges::sort(s);
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

ErrorStats aggregate_errors(std::span<const double> per_seed) {
  if (per_seed.empty()) throw Error("aggregate_errors: empty error list");
  for (double e : per_seed)
    if (!std::isfinite(e) || e < 0.0) throw Error("aggregate_errors: errors must be finite and non-negative");
  ErrorStats s;
  s.per_seed.assign(per_seed.begin(), per_seed.end());
  s.avg = std::accumulate(per_seed.begin(), per_seed.end(), 0.0) / static_cast<double>(per_seed.size());
  s.worst = *std::ranges::max_element(per_seed);
  // The mean of doubles can exceed the max by an ulp when all entries are equal.
  s.avg = std::min(s.avg, s.worst);
  s.p50 = quantile(per_seed, 0.5);
  s.p90 = quantile(per_seed, 0.9);
  s.p99 = quantile(per_seed, 0.99);
  return s;
}

}  // namespace bkev
