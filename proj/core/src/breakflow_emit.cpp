#include <cmath>
#include <sstream>

#include "bkev/breakflow.hpp"
#include "bkev/error.hpp"
#include "bkev/format.hpp"
#include "bkev/rng.hpp"

namespace bkev::breakflow {

namespace {

std::string join(const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
  return s;
}

}  // namespace

std::string emit_geometry(const DomainLayout& layout, double fidelity_scale) {
  if (!(fidelity_scale >= 1.0) || !std::isfinite(fidelity_scale))
    throw Error("emit_geometry: fidelity_scale must be >= 1");
  const auto issues = validate_layout(layout);
  if (!issues.empty()) throw Error("emit_geometry: invalid layout: " + issues.front());

  const Box& d = layout.domain;
  const Box& z = layout.refinement_zone;
  std::ostringstream out;
  out << "// BreakFlow layout, seed " << layout.seed << ", " << layout.obstacles.size() << " obstacles\n";
  out << "lc_near = " << format_number(fidelity_scale / 3.0) << ";\n";
  out << "lc_zone = " << format_number(2.0 * fidelity_scale / 3.0) << ";\n";
  out << "lc_far = " << format_number(fidelity_scale) << ";\n\n";

  out << "Point(1) = {" << format_number(d.x_min) << ", " << format_number(d.y_min) << ", 0, lc_far};\n";
  out << "Point(2) = {" << format_number(d.x_max) << ", " << format_number(d.y_min) << ", 0, lc_far};\n";
  out << "Point(3) = {" << format_number(d.x_max) << ", " << format_number(d.y_max) << ", 0, lc_far};\n";
  out << "Point(4) = {" << format_number(d.x_min) << ", " << format_number(d.y_max) << ", 0, lc_far};\n";
  out << "Line(1) = {1, 2};\nLine(2) = {2, 3};\nLine(3) = {3, 4};\nLine(4) = {4, 1};\n";
  out << "Curve Loop(1) = {1, 2, 3, 4};\n";

  std::vector<int> loops{1}, walls;
  int point = 5, line = 5, loop = 2;
  for (const auto& o : layout.obstacles) {
    const auto poly = o.polygon();
    out << "\n// obstacle " << o.w << "x" << o.h << " at (" << format_number(o.cx) << ", " << format_number(o.cy)
        << "), rotation " << o.rotation << "\n";
    const int p0 = point, l0 = line;
    for (const auto& v : poly)
      out << "Point(" << point++ << ") = {" << format_number(v.x) << ", " << format_number(v.y) << ", 0, lc_near};\n";
    for (int i = 0; i < 4; ++i) {
      walls.push_back(line);
      out << "Line(" << line++ << ") = {" << p0 + i << ", " << p0 + (i + 1) % 4 << "};\n";
    }
    out << "Curve Loop(" << loop << ") = {" << l0 << ", " << l0 + 1 << ", " << l0 + 2 << ", " << l0 + 3 << "};\n";
    loops.push_back(loop++);
  }

  out << "\nPlane Surface(1) = {" << join(loops) << "};\n";
  out << "Physical Curve(\"outlet\") = {2};\n";
  out << "Physical Curve(\"inlet\") = {1, 3, 4};\n";
  if (!walls.empty()) out << "Physical Curve(\"wall\") = {" << join(walls) << "};\n";
  out << "Physical Surface(\"fluid\") = {1};\n\n";

  std::vector<int> fields;
  if (!walls.empty()) {
    out << "Field[1] = Distance;\n";
    out << "Field[1].CurvesList = {" << join(walls) << "};\n";
    out << "Field[1].Sampling = 20;\n";
    out << "Field[2] = Threshold;\n";
    out << "Field[2].InField = 1;\n";
    out << "Field[2].SizeMin = lc_near;\n";
    out << "Field[2].SizeMax = lc_zone;\n";
    out << "Field[2].DistMin = 0;\n";
    out << "Field[2].DistMax = 5;\n";
    fields.push_back(2);
  }
  out << "Field[3] = Box;\n";
  out << "Field[3].VIn = lc_zone;\n";
  out << "Field[3].VOut = lc_far;\n";
  out << "Field[3].XMin = " << format_number(z.x_min) << ";\n";
  out << "Field[3].XMax = " << format_number(z.x_max) << ";\n";
  out << "Field[3].YMin = " << format_number(z.y_min) << ";\n";
  out << "Field[3].YMax = " << format_number(z.y_max) << ";\n";
  out << "Field[3].Thickness = 5;\n";
  fields.push_back(3);
  out << "Field[4] = Min;\n";
  out << "Field[4].FieldsList = {" << join(fields) << "};\n";
  out << "Background Field = 4;\n";
  out << "Mesh.MeshSizeExtendFromBoundary = 0;\n";
  out << "Mesh.MeshSizeFromPoints = 0;\n";
  out << "Mesh.MeshSizeFromCurvature = 0;\n";
  return out.str();
}

ReynoldsBin reynolds_bin(int bin) {
  switch (bin) {
    case 1: return {10.0, 40.0};
    case 2: return {40.0, 90.0};
    case 3: return {90.0, 160.0};
    default: throw Error("reynolds bin must be 1, 2 or 3, got " + std::to_string(bin));
  }
}

double sample_reynolds(const SimConfigSpec& spec, std::uint64_t seed) {
  const auto [lo, hi] = reynolds_bin(spec.re_bin);
  double re = 0.0;
  if (spec.reynolds) {
    re = *spec.reynolds;
  } else {
    auto rng = CounterRng::derive(seed, 0x5e);
    re = lo + (hi - lo) * (1.0 - rng.uniform());
  }
  if (!(re > lo && re <= hi))
    throw Error("Re " + format_number(re) + " outside bin " + std::to_string(spec.re_bin) + " (" + format_number(lo) +
                ", " + format_number(hi) + "]");
  return re;
}

std::string emit_sim_config(const SimConfigSpec& spec, std::uint64_t seed) {
  if (!(spec.fidelity_scale >= 1.0) || !std::isfinite(spec.fidelity_scale))
    throw Error("emit_sim_config: fidelity_scale must be >= 1");
  if (!(spec.sim_time > 0.0) || spec.n_frames < 1) throw Error("emit_sim_config: sim_time and n_frames must be positive");
  const double re = sample_reynolds(spec, seed);
  const double s = spec.fidelity_scale;

  std::ostringstream out;
  out << "; BreakFlow simulation, seed " << seed << ", Re bin " << spec.re_bin << "\n";
  out << "; base dt and pseudo-dt follow the PyFR 2D incompressible cylinder example\n\n";
  out << "[mesh]\n";
  out << "file = " << spec.mesh_file << "\n";
  out << "fidelity-scale = " << format_number(s) << "\n\n";
  out << "[backend]\nprecision = double\n\n";
  out << "[constants]\n";
  out << "Re = " << format_number(re) << "\n";
  out << "nu = " << format_number(1.0 / re) << "\n";
  out << "ac-zeta = 2.5\n\n";
  out << "[solver]\nsystem = ac-navier-stokes\norder = 2\n\n";
  out << "[solver-time-integrator]\n";
  out << "formulation = dual\nscheme = bdf2\npseudo-scheme = rk45\ncontroller = none\n";
  out << "pseudo-controller = local-pi\npseudo-niters-min = 3\npseudo-niters-max = 3\n";
  out << "tstart = 0\n";
  out << "tend = " << format_number(spec.sim_time) << "\n";
  out << "dt = " << format_number(kBaseDt * s) << "\n";
  out << "pseudo-dt = " << format_number(kBasePseudoDt * s) << "\n\n";
  out << "[soln-plugin-writer]\n";
  out << "dt-out = " << format_number(spec.sim_time / spec.n_frames) << "\n";
  out << "basedir = .\nbasename = frame-{n:03d}\n\n";
  out << "[soln-bcs-inlet]\ntype = ac-in-fv\nu = 1\nv = 0\n\n";
  out << "[soln-bcs-outlet]\ntype = ac-out-fp\np = 0\n\n";
  out << "[soln-bcs-wall]\ntype = no-slp-wall\n\n";
  out << "[soln-ics]\nu = 1\nv = 0\np = 0\n";
  return out.str();
}

}  // namespace bkev::breakflow
