#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orbitlab/serialize.hpp"

namespace orbitlab {

struct RunOverrides {
  int threads = 1;
  bool has_seed_override = false;
  std::uint64_t seed_override = 0;
  std::string out_dir;  // prefix for relative output paths
};

/// Runs one experiment: sampling, estimation, optional adversarial
/// refinement, and report writing. Returns the exit code contract of the
/// `estimate` subcommand: 0 clean, 1 bound violations, 2 config error.
int run_estimate(const std::string& config_path, const RunOverrides& overrides,
                 std::ostream& log);

/// In-memory variant used by tests: produces the report JSON string.
std::string run_estimate_to_json(const ExperimentConfig& config, int threads);

/// Runs every suite entry through verify_claims, printing one PASS/FAIL line
/// per entry and writing a machine-readable summary. Exit 0 iff all pass.
int run_verify(const std::string& suite_path, const RunOverrides& overrides,
               std::ostream& log);

/// Aggregates report JSON files into one CSV and an SVG chart.
/// Exit 2 when an input file is missing.
int run_report(const std::vector<std::string>& report_paths, const std::string& out_prefix,
               std::ostream& log);

}  // namespace orbitlab
