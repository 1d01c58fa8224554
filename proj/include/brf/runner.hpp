#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "brf/spectrum.hpp"
#include "brf/types.hpp"

namespace brf {

/// One run: class, initial data, eigenvalue scale, integrator settings and
/// the set of files to produce.
struct RunConfig {
  BianchiClass cls = BianchiClass::Heisenberg;
  double a0 = 0.0;
  double b0 = 0.0;
  double c0 = 0.0;
  double lambda0 = 1.0;
  IntegratorConfig integrator;
  bool out_trajectory_csv = true;
  bool out_envelope_csv = true;
  bool out_report_json = true;
  // Extra envelope CSV columns: (ricci index, which bound).
  std::vector<std::pair<int, EnvelopeBound>> monotone_columns;
};

/// Parses the flat JSON run config. Unknown keys are rejected. Throws
/// std::invalid_argument with a one-line diagnostic.
RunConfig parse_run_config(const std::string& json_text);

struct RunResult {
  std::string report;                   // report JSON text
  std::vector<std::string> warnings;    // non-fatal diagnostics
  std::vector<std::filesystem::path> files;
};

/// Executes a run and writes the requested files (trajectory.csv,
/// envelope.csv, report.json) into out_dir, creating it if needed. Partial
/// files are removed when the run fails.
RunResult run(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace brf
