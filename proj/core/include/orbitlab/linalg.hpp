#pragma once

#include <Eigen/Core>
#include <vector>

#include "orbitlab/rng.hpp"

namespace orbitlab {

/// Sum of singular values.
double nuclear_norm(const Eigen::MatrixXd& m);
double nuclear_norm(const Eigen::MatrixXcd& m);

double smallest_singular_value(const Eigen::MatrixXd& m);

/// Symmetric PSD square root via eigendecomposition; negative eigenvalues are
/// clamped to zero. Throws NotSymmetric when the input is not symmetric to
/// 1e-10 (relative to its norm).
Eigen::MatrixXd sym_sqrt_psd(const Eigen::MatrixXd& s);

/// Row-sign convention used by special_svd. Plucker coordinates built from the
/// factorization are convention-independent; the alternate convention exists
/// so tests can verify that.
enum class SvdConvention { FirstEntryPositive, LastEntryPositive };

struct SpecialSvd {
  Eigen::MatrixXd u;       // r x r, det(u) = +1
  Eigen::VectorXd sigma;   // descending
  Eigen::MatrixXd v;       // r x n, v * v^T = I_r
};

/// Thin SVD X = U diag(sigma) V with U in SO(r) and V having orthonormal rows.
/// Requires n >= r. Signs are fixed by making the first entry of each row of V
/// of magnitude > 1e-9 positive (compensated in U), then restoring det(U) = +1
/// by negating the last column of U and last row of V.
SpecialSvd special_svd(const Eigen::MatrixXd& x,
                       SvdConvention convention = SvdConvention::FirstEntryPositive);

/// Determinants of all r x r column submatrices of an r x n matrix, ordered by
/// lexicographic column index sets. Requires n >= r.
Eigen::VectorXd plucker_minors(const Eigen::MatrixXd& v);

long binomial(int n, int k);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// diagonal of the triangular factor made nonnegative.
Eigen::MatrixXd haar_orthogonal(int r, SplitRng& rng);
/// Haar on SO(r): Haar on O(r), then the last column is negated when det < 0.
Eigen::MatrixXd haar_special_orthogonal(int r, SplitRng& rng);
Eigen::MatrixXcd haar_unitary(int r, SplitRng& rng);

/// n x (n-1) matrix whose columns form a fixed orthonormal basis of the
/// orthogonal complement of the all-ones vector.
Eigen::MatrixXd helmert_basis(int n);

}  // namespace orbitlab
