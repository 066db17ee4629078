#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitlab/combinators.hpp"
#include "orbitlab/embeddings.hpp"
#include "orbitlab/quotient_metrics.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Pair sampling

struct MixWeights {
  double independent = 1.0;
  double near_diagonal = 0.0;
  double near_orbit = 0.0;
};

struct PairSample {
  Point x, y;
};

/// Deterministic in the seed. Near-diagonal pairs perturb by eps * ||x|| with
/// eps alternating in {1e-3, 1e-6}; near-orbit pairs place y next to g x for a
/// random group element g. Throws BadMix unless the weights are nonnegative
/// and sum to 1.
std::vector<PairSample> sample_pairs(const GroupActionSpec& spec, std::size_t n,
                                     const MixWeights& mix, std::uint64_t seed,
                                     double scale = 1.0);

// ---------------------------------------------------------------------------
// Reports

struct WitnessPair {
  Point x, y;
  double ratio = 0.0;
};

struct BoundViolation {
  Point x, y;
  double quotient_distance = 0.0;
  double embedded_distance = 0.0;
  double claimed_bound = 0.0;
  std::string side;  // "upper", "lower", or "collapse"
};

struct DistortionReport {
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  double kappa_hat = 0.0;
  std::optional<WitnessPair> witness_min;
  std::optional<WitnessPair> witness_max;
  std::size_t n_pairs = 0;
  std::uint64_t seed = 0;
  std::vector<BoundViolation> violations;
  double runtime_seconds = 0.0;

  /// Merge min/max/violations of two partial reports (associative).
  static DistortionReport merge(const DistortionReport& a, const DistortionReport& b);
};

struct EstimateOptions {
  int threads = 1;
};

/// alpha_hat / beta_hat are the extreme ratios ||f(x)-f(y)|| / d over pairs
/// with d > 1e-12; degenerate pairs must embed within 1e-9 or are recorded as
/// collapse violations. Claimed bounds are checked with absolute slack
/// 1e-9 (1 + d). Throws NoValidPairs when every pair is degenerate.
DistortionReport estimate_distortion(const PointMap& eval, const PointMetric& metric,
                                     const std::vector<PairSample>& pairs,
                                     std::optional<double> alpha_claim,
                                     std::optional<double> beta_claim,
                                     std::uint64_t seed,
                                     const EstimateOptions& options = {});

DistortionReport estimate_distortion(const EmbeddingHandle& handle,
                                     const MetricOracle& oracle,
                                     const std::vector<PairSample>& pairs,
                                     const EstimateOptions& options = {});

// ---------------------------------------------------------------------------
// Adversarial search

enum class SearchObjective { MaximizeRatio, MinimizeRatio };

struct AdversarialResult {
  PairSample pair;
  double ratio = 0.0;
};

/// Derivative-free coordinate descent on the pair coordinates from restart
/// starting pairs; the step schedule halves from 0.5 * scale down to 1e-8.
/// Deterministic given the seed, and the result never loses to its own
/// starting samples.
AdversarialResult adversarial_search(const PointMap& eval, const PointMetric& metric,
                                     SearchObjective objective,
                                     const std::vector<PairSample>& starts);

AdversarialResult adversarial_search(const EmbeddingHandle& handle,
                                     const MetricOracle& oracle,
                                     SearchObjective objective, int restarts,
                                     std::uint64_t seed);

// ---------------------------------------------------------------------------
// Claim verification

struct VerifyBudget {
  std::size_t pairs = 10000;
  int restarts = 10;
};

struct VerifyOutcome {
  bool pass = false;
  DistortionReport report;
  double adversarial_kappa = 0.0;
  std::vector<std::string> failures;
};

/// Runs the estimator plus both adversarial searches. Passes iff no bound
/// violation exceeds 1e-6 relative slack and, for exact kappa claims, the
/// adversarial kappa reaches 99% of the claim (interval claims are checked on
/// the containment side only).
VerifyOutcome verify_claims(const EmbeddingHandle& handle, const MetricOracle& oracle,
                            const VerifyBudget& budget, std::uint64_t seed,
                            const EstimateOptions& options = {});

// ---------------------------------------------------------------------------
// Reference constants

struct ReferenceEntry {
  std::string label;
  bool exact = true;
  std::string closed_form;
  double lo = 0.0;
  double hi = 0.0;
  std::string citation;
};

/// Distortion and contortion constants used by the verification suites.
const std::vector<ReferenceEntry>& reference_table();

/// Lookup by label; throws BadArgument when absent.
const ReferenceEntry& reference_lookup(const std::string& label);

}  // namespace orbitlab
