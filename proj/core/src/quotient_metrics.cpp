#include "orbitlab/quotient_metrics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "orbitlab/assignment.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/linalg.hpp"

namespace orbitlab {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double clamped_sqrt(double sq) { return std::sqrt(std::max(sq, 0.0)); }

}  // namespace

double dist_finite_linear(const std::vector<Isometry>& elements, const Point& x,
                          const Point& y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : elements) {
    const Point gy = g.apply(y);
    best = std::min(best, (x.data - gy.data).norm());
  }
  return best;
}

double dist_finite_linear(const GroupActionSpec& action, const Point& x, const Point& y) {
  if (x.ambient != action.ambient() || y.ambient != action.ambient()) {
    throw DimensionMismatch("dist_finite_linear point shape");
  }
  return dist_finite_linear(elements_of(action), x, y);
}

// The quotient distances below all have the form
//   d([x],[y])^2 = ||x||^2 + ||y||^2 - 2 max_g <g y, x>,
// but evaluating that difference squares the rounding error on same-orbit
// pairs. Each implementation instead recovers a maximizing g from the same
// closed form and returns ||x - g y|| directly.

double dist_scalar_cyclic(int order, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (order < 2) throw BadArgument("dist_scalar_cyclic needs order >= 2");
  if (u.size() != v.size()) throw DimensionMismatch("dist_scalar_cyclic");
  const std::complex<double> z = u.dot(v);  // sum conj(u_i) v_i
  double best = -std::numeric_limits<double>::infinity();
  int best_j = 0;
  for (int j = 0; j < order; ++j) {
    const double angle = kTwoPi * j / order;
    const double aligned = std::cos(angle) * z.real() - std::sin(angle) * z.imag();
    if (aligned > best) {
      best = aligned;
      best_j = j;
    }
  }
  return (u - std::polar(1.0, kTwoPi * best_j / order) * v).norm();
}

double dist_circle_scalar(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size()) throw DimensionMismatch("dist_circle_scalar");
  const std::complex<double> z = u.dot(v);
  if (std::abs(z) == 0.0) {
    return std::sqrt(u.squaredNorm() + v.squaredNorm());
  }
  return (u - (std::conj(z) / std::abs(z)) * v).norm();
}

double dist_orthogonal(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatch("dist_orthogonal");
  const Eigen::MatrixXd product = x * y.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(product, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Procrustes alignment: with X Y^T = U S V^T, Q = U V^T maximizes <X, Q Y>
  const Eigen::MatrixXd q = svd.matrixU() * svd.matrixV().transpose();
  return (x - q * y).norm();
}

double so_trace_max(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw NotSquare("so_trace_max");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  const double nuclear = s.sum();
  const double smin = s[s.size() - 1];
  const double smax = s[0];
  const double det = m.determinant();
  // near det = 0 the two branches coincide (sigma_min -> 0)
  const double det_floor = 1e-12 * std::pow(smax, static_cast<double>(m.rows()));
  const bool negative = det < 0.0 && std::abs(det) >= det_floor;
  return nuclear - (negative ? 2.0 * smin : 0.0);
}

double dist_special_orthogonal(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionMismatch("dist_special_orthogonal");
  const int r = static_cast<int>(x.rows());
  const Eigen::MatrixXd product = x * y.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(product, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // rotation-constrained Procrustes: flip the least significant direction
  // when U V^T has determinant -1 (realizing the trace maximum over SO(r))
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(r);
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) flip[r - 1] = -1.0;
  const Eigen::MatrixXd q =
      svd.matrixU() * flip.asDiagonal() * svd.matrixV().transpose();
  return (x - q * y).norm();
}

double dist_unitary(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw DimensionMismatch("dist_unitary");
  const Eigen::MatrixXcd product = x * y.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(product,
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd q = svd.matrixU() * svd.matrixV().adjoint();
  return (x - q * y).norm();
}

double dist_permutation_wasserstein(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw SizeMismatch("dist_permutation_wasserstein");
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = (x.col(i) - y.col(j)).squaredNorm();
  return clamped_sqrt(assignment_min_cost(cost));
}

double dist_euclidean_family(EuclideanKind kind, const Eigen::MatrixXd& x,
                             const Eigen::MatrixXd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw SizeMismatch("dist_euclidean_family");
  if (x.cols() < 2) throw SizeMismatch("dist_euclidean_family needs n >= 2");
  Eigen::MatrixXd xc = x.colwise() - x.rowwise().mean();
  Eigen::MatrixXd yc = y.colwise() - y.rowwise().mean();
  return kind == EuclideanKind::E ? dist_orthogonal(xc, yc)
                                  : dist_special_orthogonal(xc, yc);
}

double dist_rect_torus(const std::vector<double>& lengths, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
  if (x.size() != y.size() || x.size() != static_cast<long>(lengths.size()))
    throw DimensionMismatch("dist_rect_torus");
  double sq = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double l = lengths[i];
    double delta = std::fmod(std::abs(x[i] - y[i]), l);
    delta = std::min(delta, l - delta);
    sq += delta * delta;
  }
  return std::sqrt(sq);
}

double dist_wallpaper(const Wallpaper& w, const Eigen::Vector2d& x,
                      const Eigen::Vector2d& y, double radius_scale) {
  const WallpaperData data = wallpaper_data(w);
  const double radius = ((x - y).norm() + 2.0 * data.cell_diameter) * radius_scale;
  double best = std::numeric_limits<double>::infinity();

  // Both lattice bases have u = (a, 0) and v with nonzero second coordinate,
  // so the integer ranges decouple: n from the vertical component, m from the
  // horizontal remainder.
  const double ux = data.lattice_u[0];
  const double vx = data.lattice_v[0], vy = data.lattice_v[1];

  for (const auto& rep : data.coset_reps) {
    const auto& pa = std::get<Isometry::PlaneAffine>(rep.form());
    const Eigen::Vector2d z = pa.a * y + pa.t;
    const Eigen::Vector2d c = x - z;  // want lattice t close to c
    const int n_lo = static_cast<int>(std::floor((c[1] - radius) / vy));
    const int n_hi = static_cast<int>(std::ceil((c[1] + radius) / vy));
    for (int n = n_lo; n <= n_hi; ++n) {
      const double rem = c[0] - n * vx;
      const int m_lo = static_cast<int>(std::floor((rem - radius) / ux));
      const int m_hi = static_cast<int>(std::ceil((rem + radius) / ux));
      for (int m = m_lo; m <= m_hi; ++m) {
        const Eigen::Vector2d t = m * data.lattice_u + n * data.lattice_v;
        best = std::min(best, (c - t).norm());
      }
    }
  }
  return best;
}

double dist_glued(const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& base,
                  const GlueSet& glue, const Eigen::VectorXd& y, int sheet,
                  const Eigen::VectorXd& yp, int sheet_p) {
  if (sheet == sheet_p) return base(y, yp);
  if (glue.samples.empty()) throw EmptyGlueSet("dist_glued");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : glue.samples) {
    best = std::min(best, base(y, z) + base(z, yp));
  }
  return best;
}

// ---------------------------------------------------------------------------

MetricOracle::MetricOracle(GroupActionSpec action, MetricStrategy strategy,
                           double tolerance)
    : action_(std::move(action)), strategy_(strategy), tolerance_(tolerance) {
  if (!(tolerance_ > 0.0)) throw BadArgument("oracle tolerance must be positive");
  const bool finite = action_.is_finite();
  switch (strategy_) {
    case MetricStrategy::BruteForceFinite:
      if (!finite) throw InfiniteGroup("brute force needs a finite family");
      cached_elements_ = elements_of(action_);
      break;
    case MetricStrategy::HaarSampleMin:
      if (finite) throw FiniteGroup("Haar sampling is for continuous families");
      break;
    case MetricStrategy::LatticeSearch:
      if (!action_.get_if<Wallpaper>() && !action_.get_if<RectTorus>())
        throw BadArgument("lattice search needs a wallpaper or torus family");
      break;
    case MetricStrategy::Assignment:
      if (!action_.get_if<PermuteColumns>())
        throw BadArgument("assignment strategy needs PermuteColumns");
      break;
    case MetricStrategy::ClosedForm:
      if (action_.get_if<FiniteLinear>() || action_.get_if<ReflectionGroup>() ||
          action_.get_if<AlternatingReflection>() || action_.get_if<Wallpaper>()) {
        throw BadArgument("no closed form for " + action_.describe());
      }
      break;
  }
}

MetricOracle MetricOracle::standard(const GroupActionSpec& action) {
  if (action.get_if<ScalarCyclic>() || action.get_if<CircleScalar>() ||
      action.get_if<OrthogonalLeft>() || action.get_if<SpecialOrthogonalLeft>() ||
      action.get_if<UnitaryLeft>() || action.get_if<EuclideanDiag>() ||
      action.get_if<SpecialEuclideanDiag>() || action.get_if<RectTorus>()) {
    return MetricOracle(action, MetricStrategy::ClosedForm);
  }
  if (action.get_if<PermuteColumns>()) {
    return MetricOracle(action, MetricStrategy::Assignment);
  }
  if (action.get_if<Wallpaper>()) {
    return MetricOracle(action, MetricStrategy::LatticeSearch);
  }
  return MetricOracle(action, MetricStrategy::BruteForceFinite);
}

double MetricOracle::distance(const Point& x, const Point& y) const {
  if (x.ambient != action_.ambient() || y.ambient != action_.ambient()) {
    throw DimensionMismatch("oracle distance point shape");
  }
  switch (strategy_) {
    case MetricStrategy::BruteForceFinite:
      return dist_finite_linear(cached_elements_, x, y);
    case MetricStrategy::Assignment:
      return dist_permutation_wasserstein(x.as_matrix(), y.as_matrix());
    case MetricStrategy::LatticeSearch: {
      if (const auto* w = action_.get_if<Wallpaper>()) {
        return dist_wallpaper(*w, Eigen::Vector2d(x.data[0], x.data[1]),
                              Eigen::Vector2d(y.data[0], y.data[1]));
      }
      const auto& t = *action_.get_if<RectTorus>();
      return dist_rect_torus(t.lengths, x.data, y.data);
    }
    case MetricStrategy::HaarSampleMin: {
      SplitRng rng(0xfeedULL);
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < haar_samples_; ++i) {
        const Isometry g = random_element(action_, rng);
        best = std::min(best, (x.data - g.apply(y).data).norm());
      }
      return best;
    }
    case MetricStrategy::ClosedForm:
      break;
  }

  if (const auto* sc = action_.get_if<ScalarCyclic>()) {
    return dist_scalar_cyclic(sc->order, x.as_cvec(), y.as_cvec());
  }
  if (action_.get_if<CircleScalar>()) {
    return dist_circle_scalar(x.as_cvec(), y.as_cvec());
  }
  if (action_.get_if<OrthogonalLeft>()) {
    return dist_orthogonal(x.as_matrix(), y.as_matrix());
  }
  if (action_.get_if<SpecialOrthogonalLeft>()) {
    return dist_special_orthogonal(x.as_matrix(), y.as_matrix());
  }
  if (const auto* ul = action_.get_if<UnitaryLeft>()) {
    return dist_unitary(x.as_cmat(ul->r, ul->n), y.as_cmat(ul->r, ul->n));
  }
  if (action_.get_if<EuclideanDiag>()) {
    return dist_euclidean_family(EuclideanKind::E, x.as_matrix(), y.as_matrix());
  }
  if (action_.get_if<SpecialEuclideanDiag>()) {
    return dist_euclidean_family(EuclideanKind::SE, x.as_matrix(), y.as_matrix());
  }
  if (const auto* t = action_.get_if<RectTorus>()) {
    return dist_rect_torus(t->lengths, x.data, y.data);
  }
  throw BadArgument("no closed form for " + action_.describe());
}

}  // namespace orbitlab
