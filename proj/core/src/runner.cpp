#include "orbitlab/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

namespace fs = std::filesystem;

std::string resolve_path(const std::string& path, const std::string& out_dir) {
  if (path.empty() || out_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(out_dir) / path).string();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

struct ExperimentResult {
  DistortionReport report;
  std::vector<Eigen::VectorXd> embedded;
  double claim = 0.0;  // declared distortion when the handle knows it
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads,
                                bool want_dump) {
  const GroupActionSpec action = parse_action_spec(cfg.action);
  const MetricOracle oracle = MetricOracle::standard(action);
  const EmbeddingHandle handle = build_embedding(cfg.embedding, action);

  ExperimentResult result;
  if (handle.kappa_claim.kind != KappaClaim::Kind::Unknown) {
    result.claim = handle.kappa_claim.hi;
  }

  const auto pairs = sample_pairs(action, cfg.pairs, cfg.mix, cfg.seed, cfg.scale);
  EstimateOptions options;
  options.threads = threads;
  result.report = estimate_distortion(handle, oracle, pairs, options);
  result.report.seed = cfg.seed;

  if (cfg.restarts > 0) {
    const auto lo = adversarial_search(handle, oracle, SearchObjective::MinimizeRatio,
                                       cfg.restarts, cfg.seed + 1);
    const auto hi = adversarial_search(handle, oracle, SearchObjective::MaximizeRatio,
                                       cfg.restarts, cfg.seed + 2);
    DistortionReport advr;
    advr.n_pairs = 2;
    if (std::isfinite(lo.ratio) && lo.ratio > 0.0)
      advr.witness_min = WitnessPair{lo.pair.x, lo.pair.y, lo.ratio};
    if (std::isfinite(hi.ratio))
      advr.witness_max = WitnessPair{hi.pair.x, hi.pair.y, hi.ratio};
    const double runtime = result.report.runtime_seconds;
    result.report = DistortionReport::merge(result.report, advr);
    result.report.runtime_seconds = runtime;
    result.report.seed = cfg.seed;
  }

  if (want_dump) {
    result.embedded.reserve(pairs.size());
    for (const auto& p : pairs) result.embedded.push_back(handle.evaluate(p.x));
  }
  return result;
}

}  // namespace

std::string run_estimate_to_json(const ExperimentConfig& config, int threads) {
  const auto result = run_experiment(config, threads, false);
  return report_to_json(config.label, result.report, result.claim);
}

int run_estimate(const std::string& config_path, const RunOverrides& overrides,
                 std::ostream& log) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (overrides.has_seed_override) cfg.seed = overrides.seed_override;
  } catch (const Error& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto result = run_experiment(cfg, overrides.threads, !cfg.out_dump.empty());
    if (!cfg.out_json.empty()) {
      write_file(resolve_path(cfg.out_json, overrides.out_dir),
                 report_to_json(cfg.label, result.report, result.claim));
    }
    if (!cfg.out_csv.empty()) {
      write_file(resolve_path(cfg.out_csv, overrides.out_dir),
                 report_csv_header() + report_to_csv_row(cfg.label, result.report));
    }
    if (!cfg.out_dump.empty()) {
      std::ostringstream dump(std::ios::binary);
      write_embedding_dump(dump, result.embedded);
      write_file(resolve_path(cfg.out_dump, overrides.out_dir), dump.str());
    }
    log << cfg.label << ": kappa_hat = " << result.report.kappa_hat << " over "
        << result.report.n_pairs << " pairs, " << result.report.violations.size()
        << " violations\n";
    return result.report.violations.empty() ? 0 : 1;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_verify(const std::string& suite_path, const RunOverrides& overrides,
               std::ostream& log) {
  std::vector<SuiteEntry> entries;
  try {
    entries = load_suite(suite_path);
  } catch (const Error& e) {
    log << "suite error: " << e.what() << "\n";
    return 2;
  }
  if (entries.empty()) {
    log << "warning: empty suite, nothing verified\n";
    return 0;
  }

  bool all_pass = true;
  std::ostringstream summary;
  summary << "[\n";
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    const auto& e = entries[idx];
    bool pass = false;
    double kappa = 0.0;
    std::string note;
    try {
      const GroupActionSpec action = parse_action_spec(e.action);
      const MetricOracle oracle = MetricOracle::standard(action);
      EmbeddingHandle handle = build_embedding(e.embedding, action);
      if (!e.claim.empty()) {
        if (e.claim.rfind("ref:", 0) == 0) {
          const auto& ref = reference_lookup(e.claim.substr(4));
          handle.kappa_claim = ref.exact ? KappaClaim::exact(ref.lo)
                                         : KappaClaim::interval(ref.lo, ref.hi);
        } else if (e.claim.rfind("exact:", 0) == 0) {
          handle.kappa_claim = KappaClaim::exact(std::stod(e.claim.substr(6)));
        } else if (e.claim.rfind("interval:", 0) == 0) {
          const std::string body = e.claim.substr(9);
          const auto comma = body.find(',');
          if (comma == std::string::npos) throw ConfigError("interval claim needs lo,hi");
          handle.kappa_claim = KappaClaim::interval(std::stod(body.substr(0, comma)),
                                                    std::stod(body.substr(comma + 1)));
        } else {
          throw ConfigError("unknown claim form: " + e.claim);
        }
      }
      std::uint64_t seed = e.seed;
      if (overrides.has_seed_override) seed = overrides.seed_override;
      EstimateOptions options;
      options.threads = overrides.threads;
      const auto outcome =
          verify_claims(handle, oracle, VerifyBudget{e.pairs, e.restarts}, seed, options);
      pass = outcome.pass;
      kappa = outcome.adversarial_kappa;
      if (!outcome.failures.empty()) note = outcome.failures.front();
    } catch (const Error& err) {
      pass = false;
      note = err.what();
    }
    all_pass = all_pass && pass;
    log << (pass ? "PASS" : "FAIL") << " " << e.label << " kappa_hat=" << kappa;
    if (!note.empty()) log << " (" << note << ")";
    log << "\n";
    summary << "  {\"label\": \"" << e.label << "\", \"pass\": " << (pass ? "true" : "false")
            << ", \"kappa_hat\": " << kappa << "}" << (idx + 1 < entries.size() ? "," : "")
            << "\n";
  }
  summary << "]\n";
  if (!overrides.out_dir.empty()) {
    write_file((fs::path(overrides.out_dir) / "verify_summary.json").string(),
               summary.str());
  }
  return all_pass ? 0 : 1;
}

int run_report(const std::vector<std::string>& report_paths, const std::string& out_prefix,
               std::ostream& log) {
  std::vector<ReportSummary> rows;
  for (const auto& path : report_paths) {
    std::ifstream in(path);
    if (!in) {
      log << "missing report file: " << path << "\n";
      return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      rows.push_back(summarize_report_json(buffer.str()));
    } catch (const std::exception& e) {
      log << "bad report file " << path << ": " << e.what() << "\n";
      return 2;
    }
  }

  std::ostringstream csv;
  csv << "label,kappa_hat,claim,margin\n";
  csv.precision(17);
  for (const auto& r : rows) {
    csv << r.label << "," << r.kappa_hat << "," << r.claim << "," << r.margin << "\n";
  }
  write_file(out_prefix + ".csv", csv.str());
  write_file(out_prefix + ".svg", render_kappa_svg(rows));
  log << "aggregated " << rows.size() << " reports into " << out_prefix << ".csv and "
      << out_prefix << ".svg\n";
  return 0;
}

}  // namespace orbitlab
