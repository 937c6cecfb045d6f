#include "bkev/manifest.hpp"

#include <unistd.h>

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "bkev/error.hpp"
#include "bkev/io.hpp"
#include "bkev/parallel.hpp"

#ifndef BKEV_VERSION
#define BKEV_VERSION "0.0.0"
#endif

namespace bkev {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> opt_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}
json opt_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }
std::optional<std::size_t> opt_index(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

json config_json(const SolverConfig& c) {
  return {{"resolution", c.resolution}, {"dt", c.dt},
          {"horizon", c.horizon},       {"n_frames", c.n_frames},
          {"store_resolution", c.store_resolution}, {"include_initial", c.include_initial}};
}

SolverConfig config_from(const json& j) {
  SolverConfig c;
  c.resolution = j.at("resolution").get<int>();
  c.dt = j.at("dt").get<double>();
  c.horizon = j.at("horizon").get<double>();
  c.n_frames = j.at("n_frames").get<int>();
  c.store_resolution = j.at("store_resolution").get<int>();
  c.include_initial = j.at("include_initial").get<bool>();
  return c;
}

json policy_json(const LadderPolicy& p) {
  json rule = std::visit(overloaded{
                             [](const FixedDt&) { return json{{"kind", "fixed_dt"}}; },
                             [](const CflScaled& c) {
                               json cap = nullptr;
                               if (c.diffusion_cap)
                                 cap = {{"coefficient", c.diffusion_cap->coefficient},
                                        {"safety", c.diffusion_cap->safety}};
                               return json{{"kind", "cfl_scaled"},
                                           {"u_max", c.u_max},
                                           {"target_cfl", c.target_cfl},
                                           {"diffusion_cap", cap}};
                             },
                         },
                         p.timestep_rule);
  return {{"factors", p.factors}, {"timestep_rule", rule}};
}

LadderPolicy policy_from(const json& j) {
  LadderPolicy p;
  p.factors = j.at("factors").get<std::vector<double>>();
  const json& r = j.at("timestep_rule");
  const auto kind = r.at("kind").get<std::string>();
  if (kind == "fixed_dt") {
    p.timestep_rule = FixedDt{};
  } else if (kind == "cfl_scaled") {
    CflScaled c;
    c.u_max = r.at("u_max").get<double>();
    c.target_cfl = r.at("target_cfl").get<double>();
    if (!r.at("diffusion_cap").is_null())
      c.diffusion_cap = DiffusionCap{r.at("diffusion_cap").at("coefficient").get<double>(),
                                     r.at("diffusion_cap").at("safety").get<double>()};
    p.timestep_rule = c;
  } else {
    throw ParseError("unknown timestep rule '" + kind + "'");
  }
  return p;
}

json entry_json(const LadderEntry& e) {
  return {{"config", config_json(e.config)},
          {"feasible", e.feasible},
          {"cost_seconds", e.cost_seconds},
          {"cost_samples", e.cost_samples},
          {"eps_avg", opt(e.eps_avg)},
          {"eps_worst", opt(e.eps_worst)},
          {"per_seed_errors", e.per_seed_errors},
          {"failure", e.failure}};
}

LadderEntry entry_from(const json& j) {
  LadderEntry e;
  e.config = config_from(j.at("config"));
  e.feasible = j.at("feasible").get<bool>();
  e.cost_seconds = j.at("cost_seconds").get<double>();
  e.cost_samples = j.at("cost_samples").get<std::vector<double>>();
  e.eps_avg = opt_double(j.at("eps_avg"));
  e.eps_worst = opt_double(j.at("eps_worst"));
  e.per_seed_errors = j.at("per_seed_errors").get<std::vector<double>>();
  e.failure = j.at("failure").get<std::string>();
  return e;
}

json record_json(const SurrogateRecord& r) {
  return {{"model", r.model},           {"benchmark", r.benchmark}, {"budget_s", r.budget},
          {"data_frac", r.data_fraction}, {"nrmse_avg", r.eps_avg},  {"nrmse_worst", r.eps_worst},
          {"c_inf_s", r.c_inf}};
}

SurrogateRecord record_from(const json& j) {
  return {j.at("model").get<std::string>(),    j.at("benchmark").get<std::string>(),
          j.at("budget_s").get<double>(),      j.at("data_frac").get<double>(),
          j.at("nrmse_avg").get<double>(),     j.at("nrmse_worst").get<double>(),
          j.at("c_inf_s").get<double>()};
}

json nstar_json(const NStar& n) {
  switch (n.status) {
    case NStarStatus::Finite: return n.value;
    case NStarStatus::Infinite: return "INF";
    case NStarStatus::Unmatched: return "unmatched";
  }
  return nullptr;
}

NStar nstar_from(const json& j) {
  if (j.is_number()) return {NStarStatus::Finite, j.get<double>()};
  const auto s = j.get<std::string>();
  if (s == "INF") return {NStarStatus::Infinite, 0.0};
  if (s == "unmatched") return {NStarStatus::Unmatched, 0.0};
  throw ParseError("bad N* value '" + s + "'");
}

json result_json(const BreakevenResult& r) {
  return {{"model", r.model},
          {"benchmark", r.benchmark},
          {"budget_s", r.budget},
          {"data_frac", r.data_fraction},
          {"nrmse_avg", r.eps_avg},
          {"nrmse_worst", r.eps_worst},
          {"c_inf_s", r.c_inf},
          {"matched_avg", opt_index(r.matched_avg)},
          {"matched_worst", opt_index(r.matched_worst)},
          {"n_star_avg", nstar_json(r.n_star_avg)},
          {"n_star_worst", nstar_json(r.n_star_worst)},
          {"robustness_ratio", opt(r.robustness_ratio)}};
}

BreakevenResult result_from(const json& j) {
  BreakevenResult r;
  r.model = j.at("model").get<std::string>();
  r.benchmark = j.at("benchmark").get<std::string>();
  r.budget = j.at("budget_s").get<double>();
  r.data_fraction = j.at("data_frac").get<double>();
  r.eps_avg = j.at("nrmse_avg").get<double>();
  r.eps_worst = j.at("nrmse_worst").get<double>();
  r.c_inf = j.at("c_inf_s").get<double>();
  r.matched_avg = opt_index(j.at("matched_avg"));
  r.matched_worst = opt_index(j.at("matched_worst"));
  r.n_star_avg = nstar_from(j.at("n_star_avg"));
  r.n_star_worst = nstar_from(j.at("n_star_worst"));
  r.robustness_ratio = opt_double(j.at("robustness_ratio"));
  return r;
}

}  // namespace

std::string policy_to_json(const LadderPolicy& policy) { return policy_json(policy).dump(2) + "\n"; }

LadderPolicy policy_from_json(const std::string& text) {
  try {
    LadderPolicy p = policy_from(json::parse(text));
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("policy: ") + e.what());
  }
}

std::string manifest_to_json(const RunManifest& m) {
  json ladder = json::array(), records = json::array(), results = json::array(), files = json::array();
  for (const auto& e : m.ladder) ladder.push_back(entry_json(e));
  for (const auto& r : m.records) records.push_back(record_json(r));
  for (const auto& r : m.results) results.push_back(result_json(r));
  for (const auto& f : m.files) files.push_back({{"path", f.path}, {"hash", f.hash}});
  const json j{{"benchmark", m.benchmark},
               {"spec_hash", m.spec_hash},
               {"policy", policy_json(m.policy)},
               {"base_config", config_json(m.base_config)},
               {"test_seeds", m.test_seeds},
               {"ladder", ladder},
               {"records", records},
               {"results", results},
               {"files", files},
               {"machine", m.machine},
               {"version", m.version}};
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.benchmark = j.at("benchmark").get<std::string>();
    m.spec_hash = j.at("spec_hash").get<std::string>();
    m.policy = policy_from(j.at("policy"));
    m.base_config = config_from(j.at("base_config"));
    m.test_seeds = j.at("test_seeds").get<std::vector<std::uint64_t>>();
    for (const auto& e : j.at("ladder")) m.ladder.push_back(entry_from(e));
    for (const auto& r : j.at("records")) m.records.push_back(record_from(r));
    for (const auto& r : j.at("results")) m.results.push_back(result_from(r));
    for (const auto& f : j.at("files")) m.files.push_back({f.at("path").get<std::string>(), f.at("hash").get<std::string>()});
    m.machine = j.at("machine").get<std::string>();
    m.version = j.at("version").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

void save_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  write_text(path, manifest_to_json(manifest));
}

RunManifest load_manifest(const std::filesystem::path& path) { return manifest_from_json(read_text(path)); }

std::vector<std::string> verify_manifest_files(const RunManifest& manifest, const std::filesystem::path& dir) {
  std::vector<std::string> problems;
  for (const auto& f : manifest.files) {
    const auto p = dir / f.path;
    if (!std::filesystem::exists(p))
      problems.push_back("missing file " + f.path);
    else if (file_hash(p) != f.hash)
      problems.push_back("hash mismatch for " + f.path);
  }
  return problems;
}

std::string toolkit_version() { return BKEV_VERSION; }

std::string machine_descriptor() {
  char host[256] = {};
  if (::gethostname(host, sizeof host - 1) != 0) std::strcpy(host, "unknown-host");
  std::string cpu = "unknown-cpu";
  std::ifstream info("/proc/cpuinfo");
  for (std::string line; std::getline(info, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(colon + 2);
      break;
    }
  }
  return std::string(host) + "; " + cpu + "; " + std::to_string(worker_count()) + " workers";
}

std::string reference_spec_hash(const PdeInstance& pde, const SolverConfig& config, const InitialConditionOptions& ic) {
  json p = std::visit(
      overloaded{
          [](const KuramotoSivashinsky& k) { return json{{"kind", "KS"}, {"dim", k.dim}, {"L", k.edge_length}}; },
          [](const NavierStokes2D& n) {
            json f = nullptr;
            if (n.forcing) {
              const auto v = n.forcing->values();
              f = {{"n", n.forcing->grid().n()},
                   {"hash", fnv1a_hex(std::string_view(reinterpret_cast<const char*>(v.data()), v.size_bytes()))}};
            }
            return json{{"kind", "NS"}, {"nu", n.nu}, {"L", n.edge_length}, {"forcing", f}};
          },
          [](const GrayScott& g) {
            return json{{"kind", "GS"},         {"F", g.feed},  {"k", g.kill},          {"Du", g.diffusivity_u},
                        {"Dv", g.diffusivity_v}, {"L", g.edge_length}, {"dim", g.dim}};
          },
      },
      pde);
  const json j{{"pde", p},
               {"config", config_json(config)},
               {"ic", {{"cutoff", ic.cutoff}, {"patches", ic.patches}, {"patch_fraction", ic.patch_fraction}}},
               {"format", kTrajectoryFormatVersion}};
  return fnv1a_hex(j.dump());
}

}  // namespace bkev
