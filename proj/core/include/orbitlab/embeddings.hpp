#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

#include "orbitlab/group_actions.hpp"
#include "orbitlab/linalg.hpp"
#include "orbitlab/point.hpp"
#include "orbitlab/quotient_metrics.hpp"

namespace orbitlab {

struct KappaClaim {
  enum class Kind { Exact, Interval, Unknown };
  Kind kind = Kind::Unknown;
  double lo = 0.0;
  double hi = 0.0;

  static KappaClaim exact(double v) { return {Kind::Exact, v, v}; }
  static KappaClaim interval(double lo, double hi) { return {Kind::Interval, lo, hi}; }
  static KappaClaim unknown() { return {}; }
};

/// A map from points to real vectors together with its declared theoretical
/// Lipschitz bounds. Claims must be hard bounds: the distortion lab records a
/// violation whenever a sampled pair escapes them.
struct EmbeddingHandle {
  std::string name;
  Ambient input;
  int output_dim = 0;
  std::function<Eigen::VectorXd(const Point&)> evaluate;
  std::optional<double> alpha_claim;  // lower Lipschitz bound
  std::optional<double> beta_claim;   // upper Lipschitz bound
  KappaClaim kappa_claim;
  std::string provenance;
  bool positively_homogeneous = false;

  Eigen::VectorXd operator()(const Point& p) const { return evaluate(p); }
};

// ---------------------------------------------------------------------------
// Raw maps. Tensor flattenings carry symmetry weights so the Euclidean norm of
// the flattened output equals the Frobenius norm of the tensor; complex
// entries are interleaved (re, im). All 0 -> 0 maps treat ||u|| < 1e-300 as 0.

/// x (x) x / ||x||, symmetric flattening with sqrt(2) off-diagonal weights.
/// Output dimension d(d+1)/2.
Eigen::VectorXd embed_real_antipodal(const Eigen::VectorXd& x);

/// u (x) conj(u) / ||u||, full complex flattening. Output dimension 2 n^2.
Eigen::VectorXd embed_complex_phase(const Eigen::VectorXcd& u);

/// Mixture (cos(pi/2r) u (x) conj(u)/||u||, sin(pi/2r) u^{(x) r}/||u||^{r-1}).
/// Output dimension 2 (n^2 + n^r).
Eigen::VectorXd embed_scalar_cyclic(int r, const Eigen::VectorXcd& u);

/// Flattened sqrt(X^T X). Output dimension n^2.
Eigen::VectorXd embed_gram_sqrt(const Eigen::MatrixXd& x);

/// sigma_min(X) * Plucker(V_X) from the determinant-normalized SVD; the zero
/// vector when sigma_min < 1e-12 sigma_max. Output dimension C(n, r).
Eigen::VectorXd embed_scaled_plucker(
    const Eigen::MatrixXd& x, SvdConvention convention = SvdConvention::FirstEntryPositive);

/// (gram_sqrt(X), sqrt(2) * scaled_plucker(X)). Needs n >= r >= 2.
Eigen::VectorXd embed_special_orthogonal(const Eigen::MatrixXd& x);

/// Fold into the fundamental chamber. Returns the representative and the
/// determinant sign of the folding element.
ChamberFold embed_chamber(const ReflectionData& refl, const Eigen::VectorXd& x);

/// (representative, sign * distance-to-walls). Output dimension dim + 1.
Eigen::VectorXd embed_alternating_reflection(const ReflectionData& refl,
                                             const Eigen::VectorXd& x);

/// Round embedding of R / L Z: (L/2pi) (cos 2pi t/L, sin 2pi t/L).
Eigen::Vector2d embed_circle_arc(double length, double t);

/// Concatenated circle embeddings, one per coordinate.
Eigen::VectorXd embed_rect_torus(const std::vector<double>& lengths,
                                 const Eigen::VectorXd& x);

/// Fold-based wallpaper embeddings for o-rect, **, 2*22 and 4*2.
/// The xx signature runs through the order-2 contortion pipeline; use
/// make_wallpaper_handle (combinators.hpp), which covers all five.
Eigen::VectorXd embed_wallpaper(const Wallpaper& w, const Eigen::Vector2d& x);

/// Center the tuple, project onto a fixed orthonormal basis of the
/// complement of the all-ones direction (Helmert), then embed the r x (n-1)
/// result for O(r) (kind E) or SO(r) (kind SE).
Eigen::VectorXd embed_landmarks(EuclideanKind kind, const Eigen::MatrixXd& x);

/// Triangle wave with period `period`, mapping into [0, period/2] with fixed
/// points at multiples of period/2.
double fold_interval(double u, double period);

// ---------------------------------------------------------------------------
// Handles with their declared bounds.

EmbeddingHandle make_identity_handle(const Ambient& ambient);
EmbeddingHandle make_real_antipodal_handle(int d);
EmbeddingHandle make_complex_phase_handle(int n);
EmbeddingHandle make_scalar_cyclic_handle(int r, int n);
EmbeddingHandle make_gram_sqrt_handle(int r, int n);
EmbeddingHandle make_special_orthogonal_handle(int r, int n);
EmbeddingHandle make_chamber_handle(ReflectionFamily family, int n);
EmbeddingHandle make_alternating_reflection_handle(ReflectionFamily family, int n);
EmbeddingHandle make_circle_arc_handle(double length);
EmbeddingHandle make_rect_torus_handle(const std::vector<double>& lengths);
EmbeddingHandle make_landmarks_handle(EuclideanKind kind, int r, int n);

}  // namespace orbitlab
