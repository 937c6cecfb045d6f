#pragma once

// Independent reference implementations used only by tests. None of these
// call into the library's transforms or integrators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "bkev/breakeven.hpp"
#include "bkev/breakflow.hpp"
#include "bkev/scaling.hpp"

namespace oracle {

using cplx = std::complex<double>;

// O(n^2) complex DFT, forward sign e^{-2πi jm/n}, unnormalized.
inline std::vector<cplx> dft(const std::vector<cplx>& x, int sign = -1) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>((j * m) % n) / n);
    out[m] = acc;
  }
  return out;
}

inline int freq(int i, int n) { return i < n / 2 ? i : i - n; }

// 1-D Kuramoto-Sivashinsky u_t = -u_xx - u_xxxx - u_x^2/2 by integrating-factor
// RK4 on the full complex spectrum, 2/3-rule dealiasing of the quadratic term.
inline std::vector<double> ks1d_ifrk4(const std::vector<double>& u0, double L, double T, double dt) {
  const int n = static_cast<int>(u0.size());
  std::vector<double> k(n), lin(n);
  std::vector<char> keep(n);
  for (int i = 0; i < n; ++i) {
    const int m = freq(i, n);
    k[i] = 2.0 * std::numbers::pi * m / L;
    lin[i] = k[i] * k[i] - k[i] * k[i] * k[i] * k[i];
    keep[i] = 3 * std::abs(m) < n;
  }
  auto nonlinear = [&](const std::vector<cplx>& uh) {
    std::vector<cplx> dx(n);
    for (int i = 0; i < n; ++i) dx[i] = (i == n / 2) ? cplx(0) : cplx(0, k[i]) * uh[i];
    auto ux = dft(dx, +1);
    std::vector<cplx> sq(n);
    for (int i = 0; i < n; ++i) {
      const double v = ux[i].real() / n;
      sq[i] = -0.5 * v * v;
    }
    auto nh = dft(sq, -1);
    for (int i = 0; i < n; ++i)
      if (!keep[i]) nh[i] = 0;
    return nh;
  };
  std::vector<cplx> u(n);
  for (int i = 0; i < n; ++i) u[i] = u0[i];
  u = dft(u, -1);
  std::vector<double> e(n), e2(n);
  for (int i = 0; i < n; ++i) {
    e[i] = std::exp(lin[i] * dt / 2);
    e2[i] = e[i] * e[i];
  }
  const long steps = std::lround(T / dt);
  std::vector<cplx> tmp(n);
  for (long s = 0; s < steps; ++s) {
    const auto a = nonlinear(u);
    for (int i = 0; i < n; ++i) tmp[i] = e[i] * (u[i] + 0.5 * dt * a[i]);
    const auto b = nonlinear(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = e[i] * u[i] + 0.5 * dt * b[i];
    const auto c = nonlinear(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = e2[i] * u[i] + dt * e[i] * c[i];
    const auto d = nonlinear(tmp);
    for (int i = 0; i < n; ++i)
      u[i] = e2[i] * u[i] + dt / 6.0 * (e2[i] * a[i] + 2.0 * e[i] * (b[i] + c[i]) + d[i]);
  }
  const auto back = dft(u, +1);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = back[i].real() / n;
  return out;
}

inline double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

// Cheapest qualifying entry by exhaustive sort on (cost, resolution, -dt).
inline std::optional<std::size_t> brute_match(const std::vector<bkev::LadderEntry>& ladder, double eps,
                                              bool worst) {
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const auto& e = ladder[i];
    const auto err = worst ? e.eps_worst : e.eps_avg;
    if (e.feasible && err && *err <= eps) ok.push_back(i);
  }
  if (ok.empty()) return std::nullopt;
  std::sort(ok.begin(), ok.end(), [&](std::size_t a, std::size_t b) {
    const auto &x = ladder[a], &y = ladder[b];
    if (x.cost_seconds != y.cost_seconds) return x.cost_seconds < y.cost_seconds;
    if (x.config.resolution != y.config.resolution) return x.config.resolution < y.config.resolution;
    if (x.config.dt != y.config.dt) return x.config.dt > y.config.dt;
    return a < b;
  });
  return ok.front();
}

struct BruteAllocation {
  long n;
  double loss;
};

// Every integer n with c_gen·n < B.
inline BruteAllocation brute_allocation(const bkev::ScalingFit& f, double B, double c_gen) {
  BruteAllocation best{0, std::numeric_limits<double>::infinity()};
  for (long n = 1; c_gen * static_cast<double>(n) < B; ++n) {
    const double c = B - c_gen * static_cast<double>(n);
    const double l = f.loss_floor + f.a * std::pow(static_cast<double>(n), -f.alpha) + f.d * std::pow(c, -f.beta);
    if (l < best.loss) best = {n, l};
  }
  return best;
}

using bkev::breakflow::Point;

inline double seg_seg(Point p1, Point p2, Point q1, Point q2) {
  auto pt_seg = [](Point p, Point a, Point b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / (vx * vx + vy * vy), 0.0, 1.0);
    return std::hypot(p.x - a.x - t * vx, p.y - a.y - t * vy);
  };
  auto orient = [](Point a, Point b, Point c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
  const double d1 = orient(p1, p2, q1), d2 = orient(p1, p2, q2), d3 = orient(q1, q2, p1), d4 = orient(q1, q2, p2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return 0.0;
  return std::min({pt_seg(p1, q1, q2), pt_seg(p2, q1, q2), pt_seg(q1, p1, p2), pt_seg(q2, p1, p2)});
}

// Ray-casting containment.
inline bool contains(const std::array<Point, 4>& poly, Point p) {
  bool in = false;
  for (std::size_t i = 0, j = 3; i < 4; j = i++) {
    if ((poly[i].y > p.y) != (poly[j].y > p.y) &&
        p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) + poly[i].x)
      in = !in;
  }
  return in;
}

inline double polygon_distance(const std::array<Point, 4>& a, const std::array<Point, 4>& b) {
  if (contains(a, b[0]) || contains(b, a[0])) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) d = std::min(d, seg_seg(a[i], a[(i + 1) % 4], b[j], b[(j + 1) % 4]));
  return d;
}

}  // namespace oracle
