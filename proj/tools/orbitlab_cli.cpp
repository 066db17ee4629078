// Command-line driver: runs distortion experiments from config files, checks
// embeddings against their declared constants, and aggregates reports.
//
// Exit codes: 0 success / all checks pass, 1 bound violations or failed
// checks, 2 configuration or input errors.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orbitlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quotient-metric embeddings and empirical distortion estimation"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite_path;
  std::string out_dir;
  std::string report_out = "report_summary";
  std::vector<std::string> report_files;
  int threads = 1;
  std::uint64_t seed_override = 0;
  bool has_seed_override = false;

  auto* estimate = app.add_subcommand("estimate", "run one experiment config");
  estimate->add_option("--config", config_path, "experiment config file")->required();
  estimate->add_option("--out", out_dir, "directory prefix for outputs");
  estimate->add_option("--threads", threads, "worker threads");
  estimate->add_option("--seed-override", seed_override, "replace the config seed")
      ->each([&](const std::string&) { has_seed_override = true; });

  auto* verify = app.add_subcommand("verify", "verify claims over a suite file");
  verify->add_option("--suite", suite_path, "suite file")->required();
  verify->add_option("--out", out_dir, "directory for the summary JSON");
  verify->add_option("--threads", threads, "worker threads");
  verify->add_option("--seed-override", seed_override, "replace every entry seed")
      ->each([&](const std::string&) { has_seed_override = true; });

  auto* report = app.add_subcommand("report", "aggregate report JSON files");
  report->add_option("files", report_files, "report JSON files")->required();
  report->add_option("--out", report_out, "output prefix for the CSV and SVG");

  CLI11_PARSE(app, argc, argv);

  orbitlab::RunOverrides overrides;
  overrides.threads = threads;
  overrides.out_dir = out_dir;
  overrides.has_seed_override = has_seed_override;
  overrides.seed_override = seed_override;

  if (estimate->parsed()) {
    return orbitlab::run_estimate(config_path, overrides, std::cout);
  }
  if (verify->parsed()) {
    return orbitlab::run_verify(suite_path, overrides, std::cout);
  }
  return orbitlab::run_report(report_files, report_out, std::cout);
}
