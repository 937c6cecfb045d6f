#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bkev/breakeven.hpp"
#include "bkev/ladder.hpp"

namespace bkev {

struct FileRef {
  std::string path;  ///< relative to the manifest directory
  std::string hash;  ///< fnv1a_hex of the content
  friend bool operator==(const FileRef&, const FileRef&) = default;
};

struct RunManifest {
  std::string benchmark;
  std::string spec_hash;  ///< hash of everything the reference trajectories depend on
  LadderPolicy policy;
  SolverConfig base_config;
  std::vector<std::uint64_t> test_seeds;
  std::vector<LadderEntry> ladder;
  std::vector<SurrogateRecord> records;
  std::vector<BreakevenResult> results;
  std::vector<FileRef> files;
  std::string machine;
  std::string version;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// {"factors": [...], "timestep_rule": {"kind": "fixed_dt" | "cfl_scaled", ...}}.
std::string policy_to_json(const LadderPolicy& policy);
LadderPolicy policy_from_json(const std::string& text);

/// Canonical JSON with sorted keys; N* is a number, "INF" or "unmatched".
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

void save_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest load_manifest(const std::filesystem::path& path);

/// Problems with referenced files (missing or hash mismatch), relative to `dir`.
std::vector<std::string> verify_manifest_files(const RunManifest& manifest, const std::filesystem::path& dir);

/// Toolkit version string.
std::string toolkit_version();
/// Host name, CPU model and worker count, for cost provenance.
std::string machine_descriptor();

/// Hash of the PDE, reference config and initial-condition options.
std::string reference_spec_hash(const PdeInstance& pde, const SolverConfig& config,
                                const InitialConditionOptions& ic);

}  // namespace bkev
