#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bkev/breakflow.hpp"
#include "bkev/error.hpp"
#include "bkev/format.hpp"
#include "bkev/io.hpp"
#include "bkev/ladder.hpp"
#include "bkev/manifest.hpp"
#include "bkev/pipeline.hpp"
#include "bkev/report.hpp"
#include "bkev/scaling.hpp"

namespace fs = std::filesystem;

namespace {

// "16" means seeds 1..16; "3-9" is a range; "1,4,7" a list.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoull(item));
  } else if (const auto dash = text.find('-'); dash != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, dash)), hi = std::stoull(text.substr(dash + 1));
    if (hi < lo) throw bkev::Error("bad seed range " + text);
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  } else {
    const auto n = std::stoull(text);
    for (std::uint64_t s = 1; s <= n; ++s) out.push_back(s);
  }
  return out;
}

// "fixed", "cfl", "cfl:<target>" or a policy JSON file.
bkev::LadderPolicy parse_policy(const std::string& text) {
  bkev::LadderPolicy p;
  if (text == "fixed") return p;
  if (text.rfind("cfl", 0) == 0 && !fs::exists(text)) {
    bkev::CflScaled rule;
    if (text.size() > 4 && text[3] == ':') rule.target_cfl = bkev::parse_number(text.substr(4));
    p.timestep_rule = rule;
    p.validate();
    return p;
  }
  return bkev::policy_from_json(bkev::read_text(text));
}

std::vector<bkev::ScalingPoint> load_points(const fs::path& path) {
  std::stringstream in(bkev::read_text(path));
  std::vector<bkev::ScalingPoint> pts;
  long line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.rfind("n_data", 0) == 0) continue;
    std::stringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw bkev::ParseError("expected n_data,c_train,loss", line_no);
    try {
      pts.push_back({bkev::parse_number(a), bkev::parse_number(b), bkev::parse_number(c)});
    } catch (const bkev::Error& e) {
      throw bkev::ParseError(e.what(), line_no);
    }
  }
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bkev: breakeven analysis of learned PDE solvers against classical solvers"};
  app.set_version_flag("--version", bkev::toolkit_version());
  app.require_subcommand(1);

  std::string benchmark = "GS", seeds = "16", policy = "fixed", out = "bkev-run", records, format = "markdown";
  int resolution = 0, ks_dim = 2, warmup = 1, timed = 3;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("generate", "simulate reference trajectories");
  gen->add_option("--benchmark", benchmark, "NS, KS or GS")->capture_default_str();
  gen->add_option("--seeds", seeds, "count, range a-b or list a,b,c")->capture_default_str();
  gen->add_option("--resolution", resolution, "override the canonical resolution");
  gen->add_option("--ks-dim", ks_dim, "K-S dimension")->capture_default_str();
  gen->add_option("--out", out, "output directory")->capture_default_str();
  bool f32 = false;
  gen->add_flag("--f32", f32, "store 32-bit samples");

  auto* lad = app.add_subcommand("ladder", "build and evaluate a fidelity ladder");
  lad->add_option("--benchmark", benchmark)->capture_default_str();
  lad->add_option("--seeds", seeds)->capture_default_str();
  lad->add_option("--policy", policy, "fixed, cfl[:target] or a policy JSON file")->capture_default_str();
  lad->add_option("--resolution", resolution);
  lad->add_option("--ks-dim", ks_dim)->capture_default_str();
  lad->add_option("--warmup", warmup)->capture_default_str();
  lad->add_option("--timed", timed)->capture_default_str();
  lad->add_option("--out", out)->capture_default_str();

  auto* fit = app.add_subcommand("fit-scaling", "fit the loss surface and budget-optimal frontier");
  std::string points;
  std::vector<double> budgets;
  double c_gen = 0.0;
  fit->add_option("points", points, "CSV with n_data,c_train,loss")->required();
  fit->add_option("--budget", budgets, "budgets for the frontier");
  fit->add_option("--c-gen", c_gen, "seconds per generated trajectory");
  fit->add_option("--seed", seed, "start-point seed");
  fit->add_option("--out", out)->capture_default_str();

  auto* be = app.add_subcommand("breakeven", "full pipeline: references, ladder, matching, N*");
  be->add_option("--benchmark", benchmark)->capture_default_str();
  be->add_option("--records", records, "surrogate records (CSV or JSON)")->required();
  be->add_option("--seeds", seeds)->capture_default_str();
  be->add_option("--policy", policy)->capture_default_str();
  be->add_option("--resolution", resolution);
  be->add_option("--ks-dim", ks_dim)->capture_default_str();
  be->add_option("--warmup", warmup)->capture_default_str();
  be->add_option("--timed", timed)->capture_default_str();
  be->add_option("--out", out)->capture_default_str();

  auto* geo = app.add_subcommand("breakflow-geom", "BreakFlow layouts, mesh scripts and solver configs");
  int count = 1, re_bin = 1;
  double fidelity = 1.0;
  geo->add_option("--seed", seed, "first layout seed");
  geo->add_option("--count", count, "number of consecutive seeds")->capture_default_str();
  geo->add_option("--fidelity", fidelity, "mesh and timestep scale (>= 1)")->capture_default_str();
  geo->add_option("--re-bin", re_bin, "Reynolds bin 1, 2 or 3")->capture_default_str();
  geo->add_option("--out", out)->capture_default_str();

  auto* rep = app.add_subcommand("report", "render a run manifest");
  rep->add_option("--out", out, "run directory holding manifest.json")->capture_default_str();
  rep->add_option("--format", format, "markdown, csv or plotdata")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    bkev::PipelineOptions opt;
    opt.benchmark = bkev::parse_benchmark(benchmark);
    opt.ks_dim = ks_dim;
    if (resolution > 0) opt.resolution = resolution;
    opt.out_dir = out;
    opt.n_warmup = warmup;
    opt.n_timed = timed;

    if (gen->parsed()) {
      const auto spec = bkev::pipeline_spec(opt);
      const auto list = parse_seeds(seeds);
      const auto refs = bkev::generate_references(spec.pde, spec.config, list);
      for (const auto& t : refs) {
        const auto path = fs::path(out) / ("seed-" + std::to_string(t.seed()) + ".bkev");
        bkev::write_trajectory(path, t, f32 ? bkev::Dtype::Float32 : bkev::Dtype::Float64);
        std::cout << path.string() << "\n";
      }
    } else if (lad->parsed()) {
      const auto spec = bkev::pipeline_spec(opt);
      const auto list = parse_seeds(seeds);
      auto pol = parse_policy(policy);
      const auto refs = bkev::generate_references(spec.pde, spec.config, list);
      if (auto* cfl = std::get_if<bkev::CflScaled>(&pol.timestep_rule); cfl && !(cfl->u_max > 0.0))
        cfl->u_max = bkev::max_abs_value(refs);
      bkev::TimingLock lock;
      const auto ladder = bkev::build_ladder(spec.config, pol, bkev::edge_length(spec.pde));
      bkev::LadderEvaluationOptions eval;
      eval.n_warmup = warmup;
      eval.n_timed = timed;
      eval.reference_config = spec.config;
      bkev::RunManifest m;
      m.benchmark = bkev::to_string(opt.benchmark);
      m.spec_hash = bkev::reference_spec_hash(spec.pde, spec.config, {});
      m.policy = pol;
      m.base_config = spec.config;
      m.test_seeds = list;
      m.ladder = bkev::evaluate_ladder(spec.pde, ladder, list, refs, eval);
      m.machine = bkev::machine_descriptor();
      m.version = bkev::toolkit_version();
      bkev::save_manifest(fs::path(out) / "manifest.json", m);
      bkev::emit_report(m, bkev::ReportFormat::PlotData, out);
      std::cout << bkev::ladder_plot_csv(m);
    } else if (fit->parsed()) {
      const auto pts = load_points(points);
      bkev::ScalingFitOptions fo;
      if (seed) fo.seed = seed;
      const auto f = bkev::fit_scaling(pts, fo);
      std::ostringstream s;
      s << "L_inf," << bkev::format_number(f.loss_floor) << "\na," << bkev::format_number(f.a) << "\nalpha,"
        << bkev::format_number(f.alpha) << "\nd," << bkev::format_number(f.d) << "\nbeta,"
        << bkev::format_number(f.beta) << "\nfit_residual," << bkev::format_number(f.fit_residual) << "\n";
      bkev::write_text(fs::path(out) / "scaling_fit.csv", "parameter,value\n" + s.str());
      std::cout << s.str();
      if (!budgets.empty()) {
        if (!(c_gen > 0.0)) throw bkev::Error("--c-gen is required with --budget");
        std::ostringstream fr;
        fr << "budget_s,n_data,c_train_s,predicted_error\n";
        for (const auto& a : bkev::budget_frontier(f, budgets, c_gen))
          fr << bkev::format_number(a.budget) << ',' << a.n_data << ',' << bkev::format_number(a.c_train) << ','
             << bkev::format_number(a.predicted_error) << "\n";
        bkev::write_text(fs::path(out) / "frontier.csv", fr.str());
        std::cout << fr.str();
      }
    } else if (be->parsed()) {
      opt.records_path = records;
      opt.test_seeds = parse_seeds(seeds);
      opt.policy = parse_policy(policy);
      const auto m = bkev::run_pipeline(opt);
      std::cout << bkev::report_csv(bkev::report_rows(m));
    } else if (geo->parsed()) {
      if (count < 1) throw bkev::Error("--count must be positive");
      for (int i = 0; i < count; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        const auto layout = bkev::breakflow::generate_layout(s);
        const auto stem = fs::path(out) / ("breakflow-" + std::to_string(s));
        bkev::breakflow::SimConfigSpec sim;
        sim.re_bin = re_bin;
        sim.fidelity_scale = fidelity;
        sim.mesh_file = stem.filename().string() + ".msh";
        bkev::write_text(stem.string() + ".json", bkev::breakflow::layout_to_json(layout));
        bkev::write_text(stem.string() + ".geo", bkev::breakflow::emit_geometry(layout, fidelity));
        bkev::write_text(stem.string() + ".ini", bkev::breakflow::emit_sim_config(sim, s));
        std::cout << stem.string() << " (" << layout.obstacles.size() << " obstacles)\n";
      }
    } else if (rep->parsed()) {
      const auto m = bkev::load_manifest(fs::path(out) / "manifest.json");
      for (const auto& p : bkev::verify_manifest_files(m, out)) std::cerr << "warning: " << p << "\n";
      for (const auto& p : bkev::emit_report(m, bkev::parse_report_format(format), out)) std::cout << p.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "bkev: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
