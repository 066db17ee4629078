#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "orbitlab/group_actions.hpp"
#include "orbitlab/point.hpp"

namespace orbitlab {

// Quotient metrics d([x],[y]) = inf over orbit representatives of ||x - g y||.
// Closed forms are used where available; everything else routes through
// enumeration or a certified lattice search.

/// Minimum of ||x - g y|| over an enumerated finite group.
double dist_finite_linear(const GroupActionSpec& action, const Point& x, const Point& y);
double dist_finite_linear(const std::vector<Isometry>& elements, const Point& x,
                          const Point& y);

/// Roots-of-unity scalar action on C^n:
/// d^2 = ||u||^2 + ||v||^2 - 2 max_j Re(w^j u* v).
double dist_scalar_cyclic(int order, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// Full circle of unit scalars: d^2 = ||u||^2 + ||v||^2 - 2 |u* v|.
double dist_circle_scalar(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// O(r) acting by left multiplication:
/// d^2 = ||X||_F^2 + ||Y||_F^2 - 2 ||X Y^T||_*.
double dist_orthogonal(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// max over Q in SO(r) of Tr(Q M) = ||M||_* - 2 sigma_min(M) [det(M) < 0].
/// The indicator is treated as 0 when |det| < 1e-12 * sigma_max^r, where the
/// two branches coincide.
double so_trace_max(const Eigen::MatrixXd& m);

/// SO(r): d^2 = ||X||_F^2 + ||Y||_F^2 - 2||XY^T||_* + 4 sigma_min(XY^T) [det < 0].
double dist_special_orthogonal(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// U(r) with the complex nuclear norm.
double dist_unitary(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// Column permutations: exact assignment on squared distances (2-Wasserstein).
double dist_permutation_wasserstein(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

enum class EuclideanKind { E, SE };

/// E(r) / SE(r) acting diagonally on n-tuples: center both tuples at their
/// centroids, then apply the orthogonal / special orthogonal closed form.
double dist_euclidean_family(EuclideanKind kind, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXd& y);

/// Product of circles: per-coordinate wraparound distances in quadrature.
double dist_rect_torus(const std::vector<double>& lengths, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

/// Exact minimum over point-group coset representatives g and lattice
/// translations t with ||t|| <= R of ||x - (g y + t)||, where
/// R = ||x - y|| + 2 * (fundamental-cell diameter). `radius_scale` widens R
/// (used by tests to confirm the default radius is already exact).
double dist_wallpaper(const Wallpaper& w, const Eigen::Vector2d& x,
                      const Eigen::Vector2d& y, double radius_scale = 1.0);

/// A closed subset Z of a metric space Y, represented by samples (used for
/// cross-sheet infima) plus an optional exact distance function.
struct GlueSet {
  std::vector<Eigen::VectorXd> samples;
  std::function<double(const Eigen::VectorXd&)> exact_distance;  // optional
};

/// Metric of the space glued from two copies of Y along Z:
/// same sheet -> d_Y; opposite sheets -> inf_z (d_Y(y,z) + d_Y(z,y')).
double dist_glued(const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& base,
                  const GlueSet& glue, const Eigen::VectorXd& y, int sheet,
                  const Eigen::VectorXd& yp, int sheet_p);

// ---------------------------------------------------------------------------

enum class MetricStrategy {
  ClosedForm,
  BruteForceFinite,
  HaarSampleMin,
  LatticeSearch,
  Assignment,
};

/// An evaluation strategy for the quotient metric of one action.
class MetricOracle {
public:
  MetricOracle(GroupActionSpec action, MetricStrategy strategy, double tolerance = 1e-9);

  /// Default strategy for the family (closed form where one exists).
  static MetricOracle standard(const GroupActionSpec& action);

  double distance(const Point& x, const Point& y) const;

  const GroupActionSpec& action() const { return action_; }
  MetricStrategy strategy() const { return strategy_; }
  double tolerance() const { return tolerance_; }

  /// Number of Haar samples used by the HaarSampleMin strategy.
  void set_haar_samples(int n) { haar_samples_ = n; }

private:
  GroupActionSpec action_;
  MetricStrategy strategy_;
  double tolerance_;
  int haar_samples_ = 4096;
  std::vector<Isometry> cached_elements_;
};

}  // namespace orbitlab
