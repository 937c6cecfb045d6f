#include "bkev/scaling.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "bkev/error.hpp"
#include "bkev/parallel.hpp"
#include "bkev/rng.hpp"

namespace bkev {

double predict_loss(const ScalingFit& fit, double n_data, double c_train) {
  if (!(n_data > 0.0) || !(c_train > 0.0)) throw Error("predict_loss: n_data and c_train must be positive");
  return fit.loss_floor + fit.a * std::pow(n_data, -fit.alpha) + fit.d * std::pow(c_train, -fit.beta);
}

namespace {

constexpr double kLogCoefLo = -13.815510557964274;  // log(1e-6)
constexpr double kLogCoefHi = 13.815510557964274;   // log(1e6)
constexpr double kExponentMax = 3.0;
constexpr int kParams = 5;

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double u) { return std::log(u / (1.0 - u)); }

struct Problem {
  std::span<const ScalingPoint> points;
  double min_loss;
  bool huber;
  double huber_delta;

  ScalingFit decode(const double* t) const {
    ScalingFit f;
    f.loss_floor = min_loss * logistic(t[0]);
    f.a = std::exp(kLogCoefLo + (kLogCoefHi - kLogCoefLo) * logistic(t[1]));
    f.alpha = kExponentMax * logistic(t[2]);
    f.d = std::exp(kLogCoefLo + (kLogCoefHi - kLogCoefLo) * logistic(t[3]));
    f.beta = kExponentMax * logistic(t[4]);
    return f;
  }

  double objective(const double* t) const {
    const ScalingFit f = decode(t);
    double acc = 0.0;
    for (const auto& p : points) {
      const double r = std::log(predict_loss(f, p.n_data, p.c_train)) - std::log(p.loss);
      if (huber && std::abs(r) > huber_delta)
        acc += 2.0 * huber_delta * (std::abs(r) - 0.5 * huber_delta);
      else
        acc += r * r;
    }
    return std::isfinite(acc) ? acc : std::numeric_limits<double>::max();
  }
};

double gsl_objective(const gsl_vector* v, void* params) {
  return static_cast<const Problem*>(params)->objective(gsl_vector_const_ptr(v, 0));
}

struct LocalResult {
  std::array<double, kParams> theta;
  double value;
};

// Nelder-Mead, restarted from its own optimum until a restart no longer improves.
LocalResult local_search(const Problem& problem, std::array<double, kParams> start) {
  using VecPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
  using MinPtr = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
  gsl_multimin_function fn{&gsl_objective, kParams, const_cast<Problem*>(&problem)};
  LocalResult best{start, problem.objective(start.data())};
  for (int restart = 0; restart < 8; ++restart) {
    VecPtr x(gsl_vector_alloc(kParams), &gsl_vector_free);
    VecPtr step(gsl_vector_alloc(kParams), &gsl_vector_free);
    for (int i = 0; i < kParams; ++i) {
      gsl_vector_set(x.get(), i, best.theta[i]);
      gsl_vector_set(step.get(), i, restart == 0 ? 1.0 : 0.05);
    }
    MinPtr m(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kParams),
             &gsl_multimin_fminimizer_free);
    gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());
    for (int iter = 0; iter < 20000; ++iter) {
      if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_fminimizer_size(m.get()) < 1e-13) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(m.get());
    const bool improved = value < best.value * (1.0 - 1e-10) || (best.value > 0.0 && value == 0.0);
    if (value <= best.value) {
      for (int i = 0; i < kParams; ++i) best.theta[i] = gsl_vector_get(gsl_multimin_fminimizer_x(m.get()), i);
      best.value = value;
    }
    if (!improved && restart > 0) break;
  }
  return best;
}

}  // namespace

ScalingFit fit_scaling(std::span<const ScalingPoint> points, const ScalingFitOptions& options) {
  if (points.size() < 8) throw Error("fit_scaling: need at least 8 points, got " + std::to_string(points.size()));
  std::set<double> ns, cs;
  double min_loss = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (!(p.n_data > 0.0) || !(p.c_train > 0.0) || !(p.loss > 0.0) || !std::isfinite(p.n_data) ||
        !std::isfinite(p.c_train) || !std::isfinite(p.loss))
      throw Error("fit_scaling: n_data, c_train and loss must be positive and finite");
    ns.insert(p.n_data);
    cs.insert(p.c_train);
    min_loss = std::min(min_loss, p.loss);
  }
  if (ns.size() < 2 || cs.size() < 2)
    throw Error("fit_scaling: degenerate design, need >= 2 distinct n_data and c_train values (got " +
                std::to_string(ns.size()) + " and " + std::to_string(cs.size()) + ")");
  if (options.starts < 1) throw Error("fit_scaling: starts must be positive");

  gsl_set_error_handler_off();
  const Problem problem{points, min_loss, options.huber, options.huber_delta};
  std::vector<LocalResult> results(static_cast<std::size_t>(options.starts));
  parallel_for(results.size(), options.threads > 0 ? options.threads : worker_count(), [&](std::size_t s) {
    auto rng = CounterRng::derive(options.seed, s);
    std::array<double, kParams> start{};
    for (auto& t : start) t = logit(0.02 + 0.96 * rng.uniform());
    results[s] = local_search(problem, start);
  });
  const auto best = std::ranges::min_element(results, {}, &LocalResult::value);

  ScalingFit fit = problem.decode(best->theta.data());
  double sq = 0.0;
  for (const auto& p : points) {
    const double r = std::log(predict_loss(fit, p.n_data, p.c_train)) - std::log(p.loss);
    sq += r * r;
  }
  fit.fit_residual = std::sqrt(sq / static_cast<double>(points.size()));
  fit.n_points = static_cast<int>(points.size());
  return fit;
}

long max_affordable_trajectories(double budget, double c_gen) {
  if (!(budget > 0.0) || !(c_gen > 0.0)) throw Error("budget and c_gen must be positive");
  auto n = static_cast<long>(std::ceil(budget / c_gen)) - 1;
  while (c_gen * static_cast<double>(n + 1) < budget) ++n;
  while (n >= 1 && !(c_gen * static_cast<double>(n) < budget)) --n;
  return n;
}

BudgetAllocation budget_optimal_allocation(const ScalingFit& fit, double budget, double c_gen) {
  if (!(c_gen > 0.0) || !std::isfinite(budget) || !(budget > c_gen))
    throw Error("budget_optimal_allocation: budget must exceed the per-trajectory generation cost");
  const long n_max = max_affordable_trajectories(budget, c_gen);
  if (n_max < 1) throw Error("budget_optimal_allocation: budget leaves no room for training");
  auto loss_at = [&](double n) { return predict_loss(fit, n, budget - c_gen * n); };

  // The objective is convex in n, hence unimodal in log n.
  double lo = 0.0, hi = std::log(static_cast<double>(n_max));
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = loss_at(std::exp(x1)), f2 = loss_at(std::exp(x2));
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = loss_at(std::exp(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = loss_at(std::exp(x2));
    }
  }
  const double x = std::exp(0.5 * (lo + hi));
  std::set<long> candidates{1, n_max};
  for (long c = static_cast<long>(std::floor(x)) - 1; c <= static_cast<long>(std::ceil(x)) + 1; ++c)
    if (c >= 1 && c <= n_max) candidates.insert(c);
  long best_n = 1;
  double best_loss = std::numeric_limits<double>::infinity();
  for (long c : candidates) {
    const double l = loss_at(static_cast<double>(c));
    if (l < best_loss) {
      best_loss = l;
      best_n = c;
    }
  }

  BudgetAllocation a;
  a.budget = budget;
  a.c_gen = c_gen;
  a.n_data = best_n;
  a.data_cost = c_gen * static_cast<double>(best_n);
  a.c_train = budget - a.data_cost;
  for (int i = 0; i < 8 && a.data_cost + a.c_train != budget; ++i)
    a.c_train = std::nextafter(a.c_train, a.data_cost + a.c_train < budget ? budget : 0.0);
  a.predicted_error = best_loss;
  return a;
}

std::vector<BudgetAllocation> budget_frontier(const ScalingFit& fit, std::span<const double> budgets, double c_gen) {
  std::vector<BudgetAllocation> out;
  for (double b : budgets) out.push_back(budget_optimal_allocation(fit, b, c_gen));
  return out;
}

}  // namespace bkev
