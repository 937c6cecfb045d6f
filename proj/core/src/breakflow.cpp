#include "bkev/breakflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

#include "bkev/error.hpp"
#include "bkev/format.hpp"
#include "bkev/rng.hpp"

namespace bkev::breakflow {

namespace {

struct Trig {
  std::array<double, 12> c;
  std::array<double, 12> s;
};

// cos/sin of 15k degrees. Angles past 90 are built from their supplements so
// that a reflected rectangle reproduces the reflected vertices bit for bit.
const Trig& trig() {
  static const Trig t = [] {
    Trig r{};
    for (int k = 0; k <= 6; ++k) {
      const double a = k * std::numbers::pi / 12.0;
      r.c[k] = k == 6 ? 0.0 : std::cos(a);
      r.s[k] = k == 0 ? 0.0 : (k == 6 ? 1.0 : std::sin(a));
    }
    r.c[0] = 1.0;
    for (int k = 7; k < 12; ++k) {
      r.c[k] = -r.c[12 - k];
      r.s[k] = r.s[12 - k];
    }
    return r;
  }();
  return t;
}

double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

bool separated_along_edges(const std::array<Point, 4>& a, const std::array<Point, 4>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point p = a[i], q = a[(i + 1) % a.size()];
    const double nx = q.y - p.y, ny = p.x - q.x;
    double amin = std::numeric_limits<double>::infinity(), amax = -amin, bmin = amin, bmax = -amin;
    for (const Point& v : a) {
      const double d = nx * v.x + ny * v.y;
      amin = std::min(amin, d);
      amax = std::max(amax, d);
    }
    for (const Point& v : b) {
      const double d = nx * v.x + ny * v.y;
      bmin = std::min(bmin, d);
      bmax = std::max(bmax, d);
    }
    if (amax < bmin || bmax < amin) return true;
  }
  return false;
}

bool inside(const Box& box, Point p, double tol) {
  return p.x >= box.x_min - tol && p.x <= box.x_max + tol && p.y >= box.y_min - tol && p.y <= box.y_max + tol;
}

bool inside(const Box& box, const Obstacle& o, double tol) {
  return std::ranges::all_of(o.polygon(), [&](Point p) { return inside(box, p, tol); });
}

}  // namespace

std::array<Point, 4> Obstacle::polygon() const {
  if (rotation < 0 || rotation >= 180 || rotation % 15 != 0)
    throw Error("obstacle rotation must be a multiple of 15 in [0, 180)");
  const int k = rotation / 15;
  const double c = trig().c[k], s = trig().s[k];
  const double hw = 0.5 * w, hh = 0.5 * h;
  const std::array<Point, 4> local{{{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}};
  std::array<Point, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = {cx + c * local[i].x - s * local[i].y, cy + s * local[i].x + c * local[i].y};
  return out;
}

Obstacle Obstacle::mirrored() const { return {cx, -cy, w, h, (180 - rotation) % 180}; }

Obstacle Obstacle::canonical() const {
  Obstacle o = *this;
  if (o.rotation >= 90) {
    o.rotation -= 90;
    std::swap(o.w, o.h);
  }
  if (o.w == o.h) o.rotation %= 90;
  return o;
}

double polygon_distance(const std::array<Point, 4>& a, const std::array<Point, 4>& b) {
  // Both polygons are convex and counter-clockwise.
  if (!separated_along_edges(a, b) && !separated_along_edges(b, a)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      d = std::min(d, point_segment_distance(a[i], b[j], b[(j + 1) % 4]));
      d = std::min(d, point_segment_distance(b[i], a[j], a[(j + 1) % 4]));
    }
  }
  return d;
}

std::vector<std::pair<int, int>> factor_pairs(int area) {
  std::vector<std::pair<int, int>> out;
  for (int w = 2; w <= area / 2; ++w)
    if (area % w == 0 && area / w >= 2) out.emplace_back(w, area / w);
  return out;
}

std::vector<int> valid_areas(int max_area) {
  std::vector<int> out;
  for (int a = 4; a <= max_area; ++a)
    if (!factor_pairs(a).empty()) out.push_back(a);
  return out;
}

DomainLayout generate_layout(std::uint64_t seed) {
  static const std::vector<int> areas_off_axis = valid_areas(30);
  static const std::vector<int> areas_on_axis = valid_areas(60);

  std::vector<Obstacle> placed;  // includes mirrors of y > 0 obstacles
  for (int x = 11; x <= 25; ++x) {
    for (int y = 0; y <= 15; ++y) {
      auto rng = CounterRng::derive(seed, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y));
      if (rng.below(2) != 0) continue;
      const auto& areas = y == 0 ? areas_on_axis : areas_off_axis;
      const int area = areas[rng.below(areas.size())];
      const auto pairs = factor_pairs(area);
      const auto [w, h] = pairs[rng.below(pairs.size())];
      int rotation = 0;
      if (y != 0)
        rotation = 15 * static_cast<int>(rng.below(12));
      else if (w == h)
        rotation = 45 * static_cast<int>(rng.below(2));

      const Obstacle cand{static_cast<double>(x), static_cast<double>(y), w, h, rotation};
      if (!inside(kDomain, cand, 0.0)) continue;
      const auto poly = cand.polygon();
      if (y != 0 && polygon_distance(poly, cand.mirrored().polygon()) < kMinSeparation) continue;
      const bool clear = std::ranges::all_of(
          placed, [&](const Obstacle& o) { return polygon_distance(poly, o.polygon()) >= kMinSeparation; });
      if (!clear) continue;
      placed.push_back(cand);
      if (y != 0) placed.push_back(cand.mirrored());
    }
  }
  std::ranges::sort(placed);
  return DomainLayout{seed, std::move(placed), kDomain, kRefinementZone};
}

std::vector<std::string> validate_layout(const DomainLayout& layout) {
  std::vector<std::string> issues;
  const auto& obs = layout.obstacles;
  auto name = [](std::size_t i, const Obstacle& o) {
    return "obstacle " + std::to_string(i) + " at (" + format_number(o.cx) + ", " + format_number(o.cy) + ")";
  };

  for (std::size_t i = 0; i < obs.size(); ++i) {
    const Obstacle& o = obs[i];
    const int area = o.w * o.h;
    if (o.w < 2 || o.h < 2) issues.push_back(name(i, o) + ": side < 2");
    if (area < 4 || area > 60) issues.push_back(name(i, o) + ": area " + std::to_string(area) + " outside [4, 60]");
    if (o.cy != 0.0 && area > 30)
      issues.push_back(name(i, o) + ": off-axis area " + std::to_string(area) + " > 30");
    if (o.rotation < 0 || o.rotation >= 180 || o.rotation % 15 != 0) {
      issues.push_back(name(i, o) + ": rotation " + std::to_string(o.rotation) + " not a multiple of 15 in [0, 180)");
      continue;
    }
    if (o.cy == 0.0 && o.rotation != 0 && !(o.w == o.h && o.rotation == 45))
      issues.push_back(name(i, o) + ": on-axis rotation " + std::to_string(o.rotation) + " not allowed");
    if (!inside(layout.domain, o, kSeparationTolerance)) issues.push_back(name(i, o) + ": outside the domain");
  }

  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i].rotation % 15 != 0 || obs[i].rotation < 0 || obs[i].rotation >= 180) continue;
    const auto pi = obs[i].polygon();
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      if (obs[j].rotation % 15 != 0 || obs[j].rotation < 0 || obs[j].rotation >= 180) continue;
      const double d = polygon_distance(pi, obs[j].polygon());
      if (d < kMinSeparation - kSeparationTolerance)
        issues.push_back("separation < 2 between " + name(i, obs[i]) + " and " + name(j, obs[j]) + " (distance " +
                         format_number(d) + ")");
    }
  }

  std::map<Obstacle, int> balance;
  for (const auto& o : obs) {
    if (o.rotation % 15 != 0 || o.rotation < 0 || o.rotation >= 180) continue;
    ++balance[o.canonical()];
    --balance[o.mirrored().canonical()];
  }
  for (const auto& [o, count] : balance)
    if (count > 0)
      issues.push_back("mirror symmetry: no mirror image for obstacle at (" + format_number(o.cx) + ", " +
                       format_number(o.cy) + ")");
  return issues;
}

namespace {

nlohmann::json box_json(const Box& b) {
  return {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max}};
}

Box box_from(const nlohmann::json& j) {
  return {j.at("x_min").get<double>(), j.at("x_max").get<double>(), j.at("y_min").get<double>(),
          j.at("y_max").get<double>()};
}

}  // namespace

std::string layout_to_json(const DomainLayout& layout) {
  auto sorted = layout.obstacles;
  std::ranges::sort(sorted);
  nlohmann::json obstacles = nlohmann::json::array();
  for (const auto& o : sorted)
    obstacles.push_back({{"cx", o.cx}, {"cy", o.cy}, {"w", o.w}, {"h", o.h}, {"rot", o.rotation}});
  nlohmann::json j{{"seed", layout.seed},
                   {"domain", box_json(layout.domain)},
                   {"refinement_zone", box_json(layout.refinement_zone)},
                   {"obstacles", std::move(obstacles)}};
  return j.dump(2) + "\n";
}

DomainLayout layout_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DomainLayout l;
    l.seed = j.at("seed").get<std::uint64_t>();
    l.domain = box_from(j.at("domain"));
    l.refinement_zone = box_from(j.at("refinement_zone"));
    for (const auto& o : j.at("obstacles"))
      l.obstacles.push_back({o.at("cx").get<double>(), o.at("cy").get<double>(), o.at("w").get<int>(),
                             o.at("h").get<int>(), o.at("rot").get<int>()});
    std::ranges::sort(l.obstacles);
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("layout json: ") + e.what(), 0);
  }
}

}  // namespace bkev::breakflow
