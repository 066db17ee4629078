#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orbitlab/point.hpp"
#include "orbitlab/rng.hpp"

namespace orbitlab {

// ---------------------------------------------------------------------------
// Isometry descriptors

/// One element of an isometric action. Linear elements keep a compact
/// symbolic form where one exists (scalar phases, column permutations) next to
/// nothing else; dense matrices are materialized on demand for closure checks
/// and ordering.
class Isometry {
public:
  struct DenseLinear { Eigen::MatrixXd m; };                  // on real coords
  struct UnitScalar { double angle; };                        // e^{i angle} on CplxVec
  struct ColumnPerm { std::vector<int> perm; };               // col j of result = col perm[j] of input
  struct PlaneAffine { Eigen::Matrix2d a; Eigen::Vector2d t; };
  struct TupleAffine { Eigen::MatrixXd a; Eigen::VectorXd b; };  // columns -> A*col + b

  using Form = std::variant<DenseLinear, UnitScalar, ColumnPerm, PlaneAffine, TupleAffine>;

  explicit Isometry(Form form) : form_(std::move(form)) {}

  static Isometry dense(Eigen::MatrixXd m) { return Isometry(DenseLinear{std::move(m)}); }
  static Isometry unit_scalar(double angle) { return Isometry(UnitScalar{angle}); }
  static Isometry column_perm(std::vector<int> p) { return Isometry(ColumnPerm{std::move(p)}); }
  static Isometry plane_affine(const Eigen::Matrix2d& a, const Eigen::Vector2d& t) {
    return Isometry(PlaneAffine{a, t});
  }
  static Isometry tuple_affine(Eigen::MatrixXd a, Eigen::VectorXd b) {
    return Isometry(TupleAffine{std::move(a), std::move(b)});
  }

  Point apply(const Point& x) const;

  /// Dense matrix acting on the real coordinates of `ambient`.
  /// Only defined for the linear forms.
  Eigen::MatrixXd dense_matrix(const Ambient& ambient) const;

  bool is_linear() const;
  const Form& form() const { return form_; }

private:
  Form form_;
};

// ---------------------------------------------------------------------------
// Action families

struct ScalarCyclic { int order; int n; };      // r-th roots of unity on C^n
struct CircleScalar { int n; };                 // unit scalars on C^n
struct FiniteLinear {                           // explicit orthogonal matrices
  int dim;
  std::vector<Eigen::MatrixXd> elements;
};
struct OrthogonalLeft { int r; int n; };        // O(r) on R^{r x n}
struct SpecialOrthogonalLeft { int r; int n; }; // SO(r) on R^{r x n}
struct UnitaryLeft { int r; int n; };           // U(r) on C^{r x n} (stored as CplxVec(r*n))
struct PermuteColumns { int d; int n; };        // S_n permuting columns of R^{d x n}
struct EuclideanDiag { int r; int n; };         // E(r) diagonally on n-tuples
struct SpecialEuclideanDiag { int r; int n; };  // SE(r) diagonally on n-tuples

enum class ReflectionFamily { A, B, I2 };
struct ReflectionGroup { ReflectionFamily family; int n; };       // A(n), B(n), I2(m)
struct AlternatingReflection { ReflectionFamily family; int n; }; // det-+1 subgroup

enum class WallpaperSignature { ORect, StarStar, TwoStar22, FourStar2, XX };
struct Wallpaper { WallpaperSignature signature; double a; double b; };
struct RectTorus { std::vector<double> lengths; };

using ActionFamily =
    std::variant<ScalarCyclic, CircleScalar, FiniteLinear, OrthogonalLeft,
                 SpecialOrthogonalLeft, UnitaryLeft, PermuteColumns, EuclideanDiag,
                 SpecialEuclideanDiag, ReflectionGroup, AlternatingReflection,
                 Wallpaper, RectTorus>;

std::string wallpaper_signature_name(WallpaperSignature s);
std::string reflection_family_name(ReflectionFamily f);

/// Descriptor of an isometric action: the family plus derived facts.
/// Construction validates the family invariants (orthogonality and closure of
/// FiniteLinear elements, positive lattice lengths, a == b for 4*2, r >= 2).
class GroupActionSpec {
public:
  explicit GroupActionSpec(ActionFamily family);

  const ActionFamily& family() const { return family_; }
  Ambient ambient() const;
  bool is_finite() const;
  std::string describe() const;

  template <typename T>
  const T* get_if() const { return std::get_if<T>(&family_); }

private:
  ActionFamily family_;
};

// ---------------------------------------------------------------------------
// Operations

/// Complete element list of a finite family, deterministically ordered
/// (lexicographically by dense matrix entries rounded to 1e-9).
/// Throws InfiniteGroup for continuous families and TooLarge past the cap.
std::vector<Isometry> elements_of(const GroupActionSpec& spec,
                                  long element_cap = 1000000);

/// Group order without materializing elements. Empty for infinite groups.
std::optional<long> group_order(const GroupActionSpec& spec);

Point apply_element(const Isometry& g, const Point& x);

/// Gaussian sample in the action's ambient space, entries scaled by `scale`.
Point random_point(const GroupActionSpec& spec, double scale, SplitRng& rng);

/// Haar draw from a continuous family (QR of a Gaussian matrix with sign-fixed
/// triangular diagonal; SO determinants corrected on the last column).
/// Euclidean families pair a Haar rotation with a Gaussian translation, and
/// torus/wallpaper families draw a uniform cell translation: those draws are
/// invariance probes, not Haar measures (none exists).
Isometry random_element(const GroupActionSpec& spec, SplitRng& rng);

/// Random element of any family, finite or not; used for invariance probes
/// and near-orbit sampling.
Isometry random_group_probe(const GroupActionSpec& spec, SplitRng& rng);

// ---------------------------------------------------------------------------
// Reflection chamber data

struct ChamberFold {
  Eigen::VectorXd representative;  // in the closed chamber
  double sign = 1.0;               // determinant of the folding element
};

/// Wall data of a fixed fundamental chamber of a finite reflection group:
/// inward unit normals of the chamber facets, a membership predicate, and the
/// fold sending any point to its orbit representative in the chamber.
class ReflectionData {
public:
  ReflectionData(ReflectionFamily family, int n);

  const std::vector<Eigen::VectorXd>& walls() const { return walls_; }
  int dim() const { return dim_; }
  ReflectionFamily family() const { return family_; }
  int label() const { return n_; }

  /// Largest entry of the Coxeter matrix (3 for A(n>=3), 4 for B, m for I2(m)).
  int max_coxeter_label() const;

  bool in_chamber(const Eigen::VectorXd& x, double tol = 1e-12) const;
  ChamberFold fold(const Eigen::VectorXd& x) const;

  /// Distance from a chamber point to the chamber boundary:
  /// min_i <x, alpha_i>. Valid because the walls meet at non-obtuse angles.
  double wall_distance(const Eigen::VectorXd& chamber_point) const;

private:
  ReflectionFamily family_;
  int n_;
  int dim_;
  std::vector<Eigen::VectorXd> walls_;
};

// ---------------------------------------------------------------------------
// Wallpaper group data (concrete realizations; see quotient_metrics.cpp for
// the lattice-search metric built on top of these).

struct WallpaperData {
  Eigen::Vector2d lattice_u;  // first lattice generator
  Eigen::Vector2d lattice_v;  // second lattice generator
  // Point-group coset representatives (A, tau): every group element is
  // t_lambda o (A, tau) with lambda in the lattice.
  std::vector<Isometry> coset_reps;
  double cell_diameter = 0.0;
};

WallpaperData wallpaper_data(const Wallpaper& w);

}  // namespace orbitlab
