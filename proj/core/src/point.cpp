#include "orbitlab/point.hpp"

#include <cmath>

namespace orbitlab {

int Ambient::real_dim() const {
  switch (kind) {
    case AmbientKind::RealVec: return rows;
    case AmbientKind::CplxVec: return 2 * rows;
    case AmbientKind::RealMat: return rows * cols;
    case AmbientKind::Plane: return 2;
  }
  return 0;
}

std::string Ambient::describe() const {
  switch (kind) {
    case AmbientKind::RealVec: return "RealVec(" + std::to_string(rows) + ")";
    case AmbientKind::CplxVec: return "CplxVec(" + std::to_string(rows) + ")";
    case AmbientKind::RealMat:
      return "RealMat(" + std::to_string(rows) + "x" + std::to_string(cols) + ")";
    case AmbientKind::Plane: return "Plane";
  }
  return "?";
}

Point Point::make(const Ambient& a, Eigen::VectorXd values) {
  if (values.size() != a.real_dim()) {
    throw DimensionMismatch("point data length " + std::to_string(values.size()) +
                            " does not match " + a.describe());
  }
  if (!values.allFinite()) {
    throw BadArgument("point entries must be finite");
  }
  return Point{a, std::move(values)};
}

Point Point::zero(const Ambient& a) {
  return Point{a, Eigen::VectorXd::Zero(a.real_dim())};
}

Point Point::from_matrix(const Eigen::MatrixXd& m) {
  Eigen::VectorXd flat(m.size());
  int k = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) flat[k++] = m(i, j);
  return make(Ambient::real_mat(static_cast<int>(m.rows()), static_cast<int>(m.cols())),
              std::move(flat));
}

Point Point::from_cvec(const Eigen::VectorXcd& v) {
  Eigen::VectorXd flat(2 * v.size());
  for (int i = 0; i < v.size(); ++i) {
    flat[2 * i] = v[i].real();
    flat[2 * i + 1] = v[i].imag();
  }
  return make(Ambient::cplx_vec(static_cast<int>(v.size())), std::move(flat));
}

Point Point::plane(double x, double y) {
  Eigen::VectorXd d(2);
  d << x, y;
  return make(Ambient::plane(), std::move(d));
}

Eigen::MatrixXd Point::as_matrix() const {
  const int r = ambient.kind == AmbientKind::RealMat ? ambient.rows : ambient.real_dim();
  const int c = ambient.kind == AmbientKind::RealMat ? ambient.cols : 1;
  Eigen::MatrixXd m(r, c);
  int k = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = data[k++];
  return m;
}

Eigen::VectorXcd Point::as_cvec() const {
  if (ambient.kind != AmbientKind::CplxVec) {
    throw DimensionMismatch("as_cvec on " + ambient.describe());
  }
  Eigen::VectorXcd v(ambient.rows);
  for (int i = 0; i < ambient.rows; ++i) {
    v[i] = std::complex<double>(data[2 * i], data[2 * i + 1]);
  }
  return v;
}

Eigen::MatrixXcd Point::as_cmat(int r, int c) const {
  Eigen::VectorXcd v = as_cvec();
  if (v.size() != r * c) throw DimensionMismatch("as_cmat shape mismatch");
  Eigen::MatrixXcd m(r, c);
  int k = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = v[k++];
  return m;
}

}  // namespace orbitlab
