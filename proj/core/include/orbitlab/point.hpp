#pragma once

#include <Eigen/Core>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab {

enum class AmbientKind { RealVec, CplxVec, RealMat, Plane };

/// Shape descriptor for the ambient space a point lives in.
/// Complex data is stored interleaved (re, im, re, im, ...); matrices are
/// flattened row-major.
struct Ambient {
  AmbientKind kind = AmbientKind::RealVec;
  int rows = 0;
  int cols = 1;

  static Ambient real_vec(int d) { return {AmbientKind::RealVec, d, 1}; }
  static Ambient cplx_vec(int n) { return {AmbientKind::CplxVec, n, 1}; }
  static Ambient real_mat(int r, int c) { return {AmbientKind::RealMat, r, c}; }
  static Ambient plane() { return {AmbientKind::Plane, 2, 1}; }

  int real_dim() const;
  std::string describe() const;
  bool operator==(const Ambient&) const = default;
};

/// A sample from an ambient space: flat real storage plus a kind tag.
/// Entries are validated to be finite and of the declared length.
struct Point {
  Ambient ambient;
  Eigen::VectorXd data;

  static Point make(const Ambient& a, Eigen::VectorXd values);
  static Point zero(const Ambient& a);
  static Point from_matrix(const Eigen::MatrixXd& m);
  static Point from_cvec(const Eigen::VectorXcd& v);
  static Point plane(double x, double y);

  Eigen::MatrixXd as_matrix() const;   // RealMat / Plane(2x1) / RealVec(dx1)
  Eigen::VectorXcd as_cvec() const;    // CplxVec
  Eigen::MatrixXcd as_cmat(int r, int c) const;  // CplxVec reshaped row-major
};

}  // namespace orbitlab
