#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "orbitlab/distortion.hpp"
#include "orbitlab/embeddings.hpp"
#include "orbitlab/group_actions.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Structured text records: name(key=value,...). Values are numbers, words, or
// bracketed lists; matrices use rows separated by ';' as in [1 0; 0 1].

GroupActionSpec parse_action_spec(const std::string& text);
std::string serialize_action_spec(const GroupActionSpec& spec);

// ---------------------------------------------------------------------------
// Experiment configs: line-based "key = value" files, '#' comments, strict
// keys (unknown keys are errors naming the offender).

struct ExperimentConfig {
  std::string label;
  std::string action;        // action-spec term
  std::string embedding;     // embedding term
  std::size_t pairs = 10000;
  MixWeights mix{0.5, 0.25, 0.25};
  int restarts = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::string out_json;
  std::string out_csv;
  std::string out_dump;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Resolve the embedding term against the action (dimensions come from the
/// action's ambient space). Throws ConfigError on incompatibility.
EmbeddingHandle build_embedding(const std::string& embedding_term,
                                const GroupActionSpec& action);

// ---------------------------------------------------------------------------
// Verification suites: blocks of "key = value" lines separated by blank
// lines. Keys: label, action, embedding, pairs, restarts, seed, claim.
// claim is one of  ref:<table-label> | exact:<value> | interval:<lo>,<hi>
// and overrides the handle's kappa claim when present.

struct SuiteEntry {
  std::string label;
  std::string action;
  std::string embedding;
  std::size_t pairs = 20000;
  int restarts = 20;
  std::uint64_t seed = 0;
  std::string claim;  // empty = use the handle's claim
};

std::vector<SuiteEntry> parse_suite(const std::string& text);
std::vector<SuiteEntry> load_suite(const std::string& path);

// ---------------------------------------------------------------------------
// Reports

/// `claim` is the declared distortion (0 when unknown); it rides along in the
/// JSON so aggregation can chart estimates against claims.
std::string report_to_json(const std::string& label, const DistortionReport& report,
                           double claim = 0.0);
std::string report_csv_header();
std::string report_to_csv_row(const std::string& label, const DistortionReport& report);

struct ReportSummary {
  std::string label;
  double kappa_hat = 0.0;
  double claim = 0.0;  // 0 when unknown
  double margin = 0.0;
};

/// Minimal fields back from a report JSON (used by the aggregator).
ReportSummary summarize_report_json(const std::string& json_text);

/// Bar chart of kappa estimates against claims; the value axis spans
/// [1, 1.1 * max kappa_hat].
std::string render_kappa_svg(const std::vector<ReportSummary>& rows);

// ---------------------------------------------------------------------------
// Embedded-vector dumps

/// Binary layout: magic "OLEMBED\0", u32 version (=1), u32 dim, u64 count,
/// then count*dim float64 values, all little-endian.
void write_embedding_dump(std::ostream& out, const std::vector<Eigen::VectorXd>& rows);
std::vector<Eigen::VectorXd> read_embedding_dump(std::istream& in);

std::string embeddings_to_csv(const std::vector<Eigen::VectorXd>& rows);

}  // namespace orbitlab
