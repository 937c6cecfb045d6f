#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bkev::breakflow {

struct Point {
  double x;
  double y;
};

/// Rectangle of integer sides w × h centred at (cx, cy), rotated
/// counter-clockwise by `rotation` degrees (w runs along x before rotation).
struct Obstacle {
  double cx = 0.0;
  double cy = 0.0;
  int w = 2;
  int h = 2;
  int rotation = 0;  ///< multiple of 15 in [0, 180)

  std::array<Point, 4> polygon() const;
  /// Reflection about y = 0 (rotation becomes −rotation mod 180).
  Obstacle mirrored() const;
  /// Same rectangle with rotation in [0, 90), swapping w and h if needed.
  Obstacle canonical() const;

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
  friend auto operator<=>(const Obstacle&, const Obstacle&) = default;
};

struct Box {
  double x_min, x_max, y_min, y_max;
  friend bool operator==(const Box&, const Box&) = default;
};

inline constexpr Box kDomain{0.0, 50.0, -25.0, 25.0};
inline constexpr Box kRefinementZone{5.0, 45.0, -20.0, 20.0};
inline constexpr double kMinSeparation = 2.0;
inline constexpr double kSeparationTolerance = 1e-9;

struct DomainLayout {
  std::uint64_t seed = 0;
  std::vector<Obstacle> obstacles;  ///< sorted by (cx, cy)
  Box domain = kDomain;
  Box refinement_zone = kRefinementZone;

  friend bool operator==(const DomainLayout&, const DomainLayout&) = default;
};

/// Euclidean distance between two convex polygons; 0 if they intersect.
double polygon_distance(const std::array<Point, 4>& a, const std::array<Point, 4>& b);

/// Areas in [4, max_area] that factor as w·h with w, h >= 2.
std::vector<int> valid_areas(int max_area);
/// Ordered pairs (w, h) with w·h = area and w, h >= 2.
std::vector<std::pair<int, int>> factor_pairs(int area);

/// Seeded layout: cells x = 11..25 (outer), y = 0..15 (inner), each with its
/// own random stream. A candidate is kept only if it lies inside the domain
/// and keeps distance >= 2 from every placed obstacle, every placed mirror
/// and its own mirror; obstacles with y > 0 are then mirrored.
DomainLayout generate_layout(std::uint64_t seed);

/// All violations found; empty means valid.
std::vector<std::string> validate_layout(const DomainLayout& layout);

/// Canonical JSON, obstacles sorted by (cx, cy).
std::string layout_to_json(const DomainLayout& layout);
DomainLayout layout_from_json(const std::string& text);

/// Gmsh .geo script: domain with obstacle holes, boundary tags and a size
/// field of (1/3, 2/3, 1)·fidelity_scale near obstacles, at the refinement
/// zone edge and at the domain edge. Throws on an invalid layout.
std::string emit_geometry(const DomainLayout& layout, double fidelity_scale = 1.0);

struct ReynoldsBin {
  double lo;
  double hi;
};
/// Bins 1..3: (10, 40], (40, 90], (90, 160].
ReynoldsBin reynolds_bin(int bin);

inline constexpr double kBaseDt = 0.005;
inline constexpr double kBasePseudoDt = 0.001;

struct SimConfigSpec {
  int re_bin = 1;
  std::optional<double> reynolds;  ///< drawn from the bin when absent
  double sim_time = 400.0;
  int n_frames = 40;
  double fidelity_scale = 1.0;
  std::string mesh_file = "breakflow.msh";
};

/// Reynolds number used for (spec, seed): spec.reynolds if set, otherwise
/// uniform in the bin. Throws if it falls outside the bin.
double sample_reynolds(const SimConfigSpec& spec, std::uint64_t seed);

/// Incompressible-flow solver config (INI) with dt and pseudo-dt scaled by
/// fidelity_scale and output every sim_time / n_frames.
std::string emit_sim_config(const SimConfigSpec& spec, std::uint64_t seed);

}  // namespace bkev::breakflow
