#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <vector>

#include "orbitlab/embeddings.hpp"
#include "orbitlab/group_actions.hpp"
#include "orbitlab/point.hpp"

namespace orbitlab {

using PointMetric = std::function<double(const Point&, const Point&)>;
using PointMap = std::function<Eigen::VectorXd(const Point&)>;

// ---------------------------------------------------------------------------
// Equivariant promotion and quotient descent.
//
// Sampled property checks (equivariance, involution, orbit expansion) use 256
// fixed-seed probes and raise errors on failure: the hypotheses are
// preconditions, not conclusions.

/// psi(x) = |G|^{-1/2} (phi(g x))_{g in G}, equivariant under the block
/// permutation action of G on the output.
struct PromotedEmbedding {
  EmbeddingHandle handle;
  std::vector<Isometry> elements;
  /// right-multiplication table: block_of(g_i, h) = index of g_i h
  std::vector<std::vector<int>> block_table;
  int block_dim = 0;

  Eigen::VectorXd act(int h_index, const Eigen::VectorXd& v) const;
  /// quotient metric on the image under the induced block action
  double image_quotient_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
};

PromotedEmbedding promote_equivariant_finite(const EmbeddingHandle& phi,
                                             const GroupActionSpec& group);

/// A G-equivariant map into R^m, G enumerated on the source with the matching
/// unitary action on the target.
struct EquivariantMap {
  Ambient input;
  PointMap eval;
  std::vector<Isometry> group;
  std::function<Eigen::VectorXd(int g_index, const Eigen::VectorXd&)> act_target;
};

/// Induced map between quotients; distances in the image are taken under the
/// target action. Verifies equivariance on sampled probes (NotEquivariant).
struct QuotientEmbedding {
  PointMap eval;
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> image_metric;
};

QuotientEmbedding descend_to_quotient(const EquivariantMap& map,
                                      const std::function<Point(SplitRng&)>& sampler,
                                      std::uint64_t check_seed = 2024);

// ---------------------------------------------------------------------------
// Quotient-orbit combination.

/// An orbit-separating map psi : X -> R^m carrying a unitary G-action on its
/// target; gamma is its declared Lipschitz constant.
struct OrbitSeparator {
  PointMap eval;
  std::function<Eigen::VectorXd(int g_index, const Eigen::VectorXd&)> act;
  double gamma = 1.0;
};

/// Psi(x) = (phi([x]), c * alpha_phi * psi(x)) with
/// kappa(Psi) <= sqrt(2) sqrt(kappa(phi)^2 + (c gamma)^2).
/// `group` supplies sampled probes for the orbit-expansion precondition
/// (PropertyCheckFailed on violation); c must be one of {1, sqrt2, 2}.
EmbeddingHandle quotient_orbit_combine(const EmbeddingHandle& phi,
                                       const OrbitSeparator& psi, double c,
                                       double alpha_phi,
                                       const std::vector<Isometry>& group,
                                       const PointMetric& base_metric,
                                       const std::function<Point(SplitRng&)>& sampler,
                                       std::uint64_t check_seed = 2024);

// ---------------------------------------------------------------------------
// Glued spaces.

/// Embedding of the double of Y glued along Z: (y, s) -> (phi(y), s * dZ(y)).
struct GluedEmbedding {
  std::function<Eigen::VectorXd(const Eigen::VectorXd& y, int sheet)> eval;
  double kappa_claim = 0.0;  // sqrt(2) sqrt(kappa_phi^2 + 1)
};

/// `dist_to_glue` must be 1-Lipschitz (spot-checked on the probe list;
/// PropertyCheckFailed) and finite somewhere (EmptyGlueSet when it is
/// identically +inf on the probes).
GluedEmbedding glue_embed(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& phi,
                          const std::function<double(const Eigen::VectorXd&)>& dist_to_glue,
                          double kappa_phi,
                          const std::vector<Eigen::VectorXd>& probes);

// ---------------------------------------------------------------------------
// Contortion pipelines for small cyclic symmetries.

struct ContortionEntry {
  std::string group;
  double lo = 0.0;
  double hi = 0.0;
  bool exact = false;
  std::string note;
};

/// |G|=1 -> 1, |G|=2 -> sqrt2, |G|=3 -> 3/2, C4 -> [2 sqrt(2-sqrt2), 2],
/// C2xC2 -> [sqrt2, 2], plus the 2^a 3^b commentary bound.
std::vector<ContortionEntry> contortion_table();

/// sigma-invariant embedding of X/<sigma>, built from the swap-coordinate
/// split s = (phi + phi o sigma)/2, a = (phi - phi o sigma)/2 as
/// (sqrt2 s, antipodal(sqrt2 a)); the normalization keeps the intermediate
/// swap-equivariant map (phi(x), phi(sigma x))/sqrt2 at phi's exact Lipschitz
/// constants. Empirical kappa <= sqrt(2) kappa(phi) against the sigma-quotient
/// metric min(d(x,y), d(x,sigma y)).
struct SymmetrizedEmbedding {
  PointMap eval;
  PointMetric quotient_metric;
  int output_dim = 0;
  std::optional<double> alpha_claim;
  std::optional<double> beta_claim;
};

SymmetrizedEmbedding c2_mod_involution(const PointMap& phi, int phi_dim,
                                       const std::function<Point(const Point&)>& sigma,
                                       const PointMetric& base_metric,
                                       std::optional<double> alpha_phi,
                                       std::optional<double> beta_phi,
                                       const std::function<Point(SplitRng&)>& sampler,
                                       std::uint64_t check_seed = 2024);

/// Order-3 version: trivial + complex isotypic split of the stacked map, the
/// complex block passing through the r = 3 scalar-cyclic embedding.
/// Empirical kappa <= (3/2) kappa(phi).
SymmetrizedEmbedding c2_mod_order3(const PointMap& phi, int phi_dim,
                                   const std::function<Point(const Point&)>& sigma,
                                   const PointMetric& base_metric,
                                   std::optional<double> alpha_phi,
                                   std::optional<double> beta_phi,
                                   const std::function<Point(SplitRng&)>& sampler,
                                   std::uint64_t check_seed = 2024);

// ---------------------------------------------------------------------------
// Max filter banks.

/// max over g of <g x, y> (real inner product). Exact assignment maximization
/// for column permutations; enumeration otherwise. InfiniteGroup for
/// continuous families.
double max_filter_pairing(const GroupActionSpec& group, const Point& x, const Point& y);

/// Phi([x]) = (<<x, a_i>>)_i for Gaussian templates drawn with a recorded
/// seed. The kappa claim carries the generic finite-group bound
/// 4 e^{3/2} |G|^{5/2} ln^{1/2}(e |G|).
EmbeddingHandle max_filter_bank(const GroupActionSpec& group, int n_templates,
                                std::uint64_t template_seed);

/// The templates behind a bank built with the same arguments.
std::vector<Point> max_filter_templates(const GroupActionSpec& group, int n_templates,
                                        std::uint64_t template_seed);

EmbeddingHandle max_filter_bank_with_templates(const GroupActionSpec& group,
                                               std::vector<Point> templates);

double max_filter_kappa_bound(double group_order);

// ---------------------------------------------------------------------------
// Wallpaper handles (all five signatures; xx runs through c2_mod_involution
// applied to the torus embedding with the glide swap).

EmbeddingHandle make_wallpaper_handle(const Wallpaper& w);

/// The glide involution on the torus used for the xx pipeline, exposed for
/// tests: (x, y) -> (x + a/2, -y).
Point xx_glide(const Wallpaper& w, const Point& p);

}  // namespace orbitlab
