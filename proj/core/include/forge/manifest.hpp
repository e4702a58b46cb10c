#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "forge/json_io.hpp"

namespace forge {

struct ManifestRun {
  std::string name;
  int p = 1;
  std::uint64_t seed = 0;
  ColoringOracle coloring = ColoringOracle::constant("c0");
  EngineConfig cfg;
};

struct ExperimentManifest {
  std::vector<ManifestRun> runs;
  std::filesystem::path output_dir;  // empty: nothing written
  std::string format = "json";       // summary table: "json" or "csv"
  std::size_t workers = 0;           // 0: hardware concurrency
};

/// Runs without a name get "run-<index>". Defaults under "defaults" apply to every run.
ExperimentManifest manifest_from_json(Json const& j);

struct RunSummary {
  std::string name;
  int p = 0;
  std::string family;
  std::size_t N = 0;
  bool success = false;
  bool verified = false;
  double runtime_ms = 0;
  std::size_t backtracks = 0;
  std::string error;
  std::string artifact;  // file written for this run, if any
};

struct BatchSummary {
  std::vector<RunSummary> rows;
  bool all_verified() const;
};

/// Each run gets its own ambient; failures are recorded, never thrown. Certificates are
/// written as <name>.cert.json, failures as <name>.failure.json, the table as
/// summary.json or summary.csv.
BatchSummary run_manifest(ExperimentManifest const& manifest);

Json summary_to_json(BatchSummary const& s);
std::string summary_to_csv(BatchSummary const& s);

}  // namespace forge
