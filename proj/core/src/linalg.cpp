#include "orbitlab/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "orbitlab/errors.hpp"

namespace orbitlab {

double nuclear_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().sum();
}

double nuclear_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return s[s.size() - 1];
}

Eigen::MatrixXd sym_sqrt_psd(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw NotSquare("sym_sqrt_psd input");
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * (1.0 + s.norm())) {
    throw NotSymmetric("asymmetry " + std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (s + s.transpose()));
  Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
         eig.eigenvectors().transpose();
}

SpecialSvd special_svd(const Eigen::MatrixXd& x, SvdConvention convention) {
  const int r = static_cast<int>(x.rows());
  const int n = static_cast<int>(x.cols());
  if (n < r) throw ShapeError("special_svd requires n >= r");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullU | Eigen::ComputeThinV);
  SpecialSvd out;
  out.u = svd.matrixU();
  out.sigma = svd.singularValues();
  out.v = svd.matrixV().transpose();  // r x n, orthonormal rows

  // Deterministic row signs, compensated in the matching column of U.
  for (int i = 0; i < r; ++i) {
    double lead = 0.0;
    if (convention == SvdConvention::FirstEntryPositive) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(out.v(i, j)) > 1e-9) { lead = out.v(i, j); break; }
      }
    } else {
      for (int j = n - 1; j >= 0; --j) {
        if (std::abs(out.v(i, j)) > 1e-9) { lead = out.v(i, j); break; }
      }
    }
    if (lead < 0.0) {
      out.v.row(i) = -out.v.row(i);
      out.u.col(i) = -out.u.col(i);
    }
  }
  if (out.u.determinant() < 0.0) {
    out.u.col(r - 1) = -out.u.col(r - 1);
    out.v.row(r - 1) = -out.v.row(r - 1);
  }
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long result = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

Eigen::VectorXd plucker_minors(const Eigen::MatrixXd& v) {
  const int r = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  if (n < r) throw ShapeError("plucker_minors requires n >= r");

  Eigen::VectorXd out(binomial(n, r));
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;

  Eigen::MatrixXd sub(r, r);
  long pos = 0;
  while (true) {
    for (int j = 0; j < r; ++j) sub.col(j) = v.col(idx[j]);
    out[pos++] = sub.determinant();
    // advance to the next lexicographic index set
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Eigen::MatrixXd haar_orthogonal(int r, SplitRng& rng) {
  Eigen::MatrixXd g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < r; ++i) {
    if (rr(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

Eigen::MatrixXd haar_special_orthogonal(int r, SplitRng& rng) {
  Eigen::MatrixXd q = haar_orthogonal(r, rng);
  if (q.determinant() < 0.0) q.col(r - 1) = -q.col(r - 1);
  return q;
}

Eigen::MatrixXcd haar_unitary(int r, SplitRng& rng) {
  Eigen::MatrixXcd g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      g(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < r; ++i) {
    const std::complex<double> d = rr(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Eigen::MatrixXd helmert_basis(int n) {
  if (n < 2) throw BadArgument("helmert_basis requires n >= 2");
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n - 1);
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / norm;
    b(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return b;
}

}  // namespace orbitlab
