#include "orbitlab/embeddings.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerate = 1e-300;

void write_complex(Eigen::VectorXd& out, long offset, const Eigen::VectorXcd& v,
                   double scale) {
  for (long i = 0; i < v.size(); ++i) {
    out[offset + 2 * i] = scale * v[i].real();
    out[offset + 2 * i + 1] = scale * v[i].imag();
  }
}

long ipow(long base, int exp) {
  long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > (1L << 26)) throw TooLarge("tensor power dimension");
  }
  return v;
}

}  // namespace

double fold_interval(double u, double period) {
  double w = std::fmod(u, period);
  if (w < 0.0) w += period;
  return std::min(w, period - w);
}

Eigen::VectorXd embed_real_antipodal(const Eigen::VectorXd& x) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<long>(d) * (d + 1) / 2);
  const double norm = x.norm();
  if (norm < kDegenerate) return out;
  long k = 0;
  const double root2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double entry = x[i] * x[j] / norm;
      out[k++] = (i == j) ? entry : root2 * entry;
    }
  }
  return out;
}

Eigen::VectorXd embed_complex_phase(const Eigen::VectorXcd& u) {
  const long n = u.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * n * n);
  const double norm = u.norm();
  if (norm < kDegenerate) return out;
  Eigen::VectorXcd tensor(n * n);
  long k = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) tensor[k++] = u[i] * std::conj(u[j]) / norm;
  write_complex(out, 0, tensor, 1.0);
  return out;
}

Eigen::VectorXd embed_scalar_cyclic(int r, const Eigen::VectorXcd& u) {
  if (r < 2) throw BadArgument("embed_scalar_cyclic needs r >= 2");
  const long n = u.size();
  const long psi_len = ipow(n, r);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * (n * n + psi_len));
  const double norm = u.norm();
  if (norm < kDegenerate) return out;

  const double phase_weight = std::cos(kPi / (2.0 * r));
  const double power_weight = std::sin(kPi / (2.0 * r));

  Eigen::VectorXcd phase(n * n);
  long k = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) phase[k++] = u[i] * std::conj(u[j]) / norm;
  write_complex(out, 0, phase, phase_weight);

  Eigen::VectorXcd power = u;
  for (int step = 1; step < r; ++step) {
    Eigen::VectorXcd next(power.size() * n);
    long p = 0;
    for (long i = 0; i < power.size(); ++i)
      for (long j = 0; j < n; ++j) next[p++] = power[i] * u[j];
    power.swap(next);
  }
  power /= std::pow(norm, r - 1);
  write_complex(out, 2 * n * n, power, power_weight);
  return out;
}

Eigen::VectorXd embed_gram_sqrt(const Eigen::MatrixXd& x) {
  // sqrt(X^T X) assembled from the SVD of X as V S V^T; forming the Gram
  // matrix first would square the rounding error of the small singular values
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
  const Eigen::MatrixXd root =
      svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().transpose();
  const int n = static_cast<int>(root.rows());
  Eigen::VectorXd out(static_cast<long>(n) * n);
  long k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[k++] = root(i, j);
  return out;
}

Eigen::VectorXd embed_scaled_plucker(const Eigen::MatrixXd& x, SvdConvention convention) {
  const int r = static_cast<int>(x.rows());
  const int n = static_cast<int>(x.cols());
  if (n < r) throw ShapeError("embed_scaled_plucker requires n >= r");
  const SpecialSvd svd = special_svd(x, convention);
  const double smin = svd.sigma[r - 1];
  const double smax = svd.sigma[0];
  if (smax <= 0.0 || smin < 1e-12 * smax) {
    return Eigen::VectorXd::Zero(binomial(n, r));
  }
  return smin * plucker_minors(svd.v);
}

Eigen::VectorXd embed_special_orthogonal(const Eigen::MatrixXd& x) {
  const int r = static_cast<int>(x.rows());
  const int n = static_cast<int>(x.cols());
  if (r < 2 || n < r) throw ShapeError("embed_special_orthogonal requires n >= r >= 2");
  const Eigen::VectorXd gram = embed_gram_sqrt(x);
  const Eigen::VectorXd plucker = embed_scaled_plucker(x);
  Eigen::VectorXd out(gram.size() + plucker.size());
  out << gram, std::sqrt(2.0) * plucker;
  return out;
}

ChamberFold embed_chamber(const ReflectionData& refl, const Eigen::VectorXd& x) {
  return refl.fold(x);
}

Eigen::VectorXd embed_alternating_reflection(const ReflectionData& refl,
                                             const Eigen::VectorXd& x) {
  const ChamberFold fold = refl.fold(x);
  Eigen::VectorXd out(refl.dim() + 1);
  out.head(refl.dim()) = fold.representative;
  out[refl.dim()] = fold.sign * refl.wall_distance(fold.representative);
  return out;
}

Eigen::Vector2d embed_circle_arc(double length, double t) {
  if (!(length > 0.0)) throw BadArgument("embed_circle_arc needs positive length");
  const double radius = length / (2.0 * kPi);
  const double angle = 2.0 * kPi * t / length;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Eigen::VectorXd embed_rect_torus(const std::vector<double>& lengths,
                                 const Eigen::VectorXd& x) {
  if (x.size() != static_cast<long>(lengths.size()))
    throw DimensionMismatch("embed_rect_torus");
  Eigen::VectorXd out(2 * x.size());
  for (long i = 0; i < x.size(); ++i) {
    out.segment<2>(2 * i) = embed_circle_arc(lengths[i], x[i]);
  }
  return out;
}

Eigen::VectorXd embed_wallpaper(const Wallpaper& w, const Eigen::Vector2d& x) {
  switch (w.signature) {
    case WallpaperSignature::ORect: {
      Eigen::VectorXd v(2);
      v << x[0], x[1];
      return embed_rect_torus({w.a, w.b}, v);
    }
    case WallpaperSignature::StarStar: {
      // mirrors on x = k a/2; the y direction is a circle of length b
      Eigen::VectorXd out(3);
      out[0] = fold_interval(x[0], w.a);
      out.tail<2>() = embed_circle_arc(w.b, x[1]);
      return out;
    }
    case WallpaperSignature::TwoStar22: {
      // fold into [0,a/2] x [0,b/2]; the residual symmetry is the half turn
      // about the cell center
      Eigen::VectorXd centered(2);
      centered << fold_interval(x[0], w.a) - w.a / 4.0,
          fold_interval(x[1], w.b) - w.b / 4.0;
      return embed_real_antipodal(centered);
    }
    case WallpaperSignature::FourStar2: {
      // mirrors are the diagonal lines u, v = s(k + 1/2) in rotated
      // coordinates u = (x+y)/sqrt2, v = (x-y)/sqrt2 with s = a/sqrt2; the
      // residual symmetry on the centered cell is the quarter turn
      const double s = w.a / std::sqrt(2.0);
      const double u = (x[0] + x[1]) / std::sqrt(2.0);
      const double v = (x[0] - x[1]) / std::sqrt(2.0);
      const double fu = fold_interval(u + s / 2.0, 2.0 * s) - s / 2.0;
      const double fv = fold_interval(v + s / 2.0, 2.0 * s) - s / 2.0;
      Eigen::VectorXcd z(1);
      z[0] = std::complex<double>(fu, fv);
      return embed_scalar_cyclic(4, z);
    }
    case WallpaperSignature::XX:
      throw UnsupportedSignature(
          "xx runs through the order-2 contortion pipeline; use make_wallpaper_handle");
  }
  throw UnsupportedSignature("embed_wallpaper");
}

Eigen::VectorXd embed_landmarks(EuclideanKind kind, const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.cols());
  if (n < 2) throw SizeMismatch("embed_landmarks needs n >= 2");
  Eigen::MatrixXd centered = x.colwise() - x.rowwise().mean();
  const Eigen::MatrixXd reduced = centered * helmert_basis(n);
  return kind == EuclideanKind::E ? embed_gram_sqrt(reduced)
                                  : embed_special_orthogonal(reduced);
}

// ---------------------------------------------------------------------------
// Handles

namespace {

double root2() { return std::sqrt(2.0); }

}  // namespace

EmbeddingHandle make_identity_handle(const Ambient& ambient) {
  EmbeddingHandle h;
  h.name = "identity";
  h.input = ambient;
  h.output_dim = ambient.real_dim();
  h.evaluate = [](const Point& p) { return p.data; };
  h.alpha_claim = 1.0;
  h.beta_claim = 1.0;
  h.kappa_claim = KappaClaim::exact(1.0);
  h.provenance = "identity map";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_real_antipodal_handle(int d) {
  EmbeddingHandle h;
  h.name = "real_antipodal";
  h.input = Ambient::real_vec(d);
  h.output_dim = d * (d + 1) / 2;
  h.evaluate = [](const Point& p) { return embed_real_antipodal(p.data); };
  h.alpha_claim = 1.0;
  h.beta_claim = d >= 2 ? root2() : 1.0;
  h.kappa_claim = KappaClaim::exact(d >= 2 ? root2() : 1.0);
  h.provenance = "normalized symmetric square, sign quotient";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_complex_phase_handle(int n) {
  EmbeddingHandle h;
  h.name = "complex_phase";
  h.input = Ambient::cplx_vec(n);
  h.output_dim = 2 * n * n;
  h.evaluate = [](const Point& p) { return embed_complex_phase(p.as_cvec()); };
  h.alpha_claim = 1.0;
  h.beta_claim = root2();
  h.kappa_claim = KappaClaim::exact(root2());
  h.provenance = "normalized sesquilinear square, circle quotient";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_scalar_cyclic_handle(int r, int n) {
  EmbeddingHandle h;
  h.name = "scalar_cyclic_r" + std::to_string(r);
  h.input = Ambient::cplx_vec(n);
  h.output_dim = static_cast<int>(2 * (static_cast<long>(n) * n + ipow(n, r)));
  h.evaluate = [r](const Point& p) { return embed_scalar_cyclic(r, p.as_cvec()); };
  h.alpha_claim = 1.0;
  h.beta_claim = r * std::sin(kPi / (2.0 * r));
  h.kappa_claim = KappaClaim::exact(r * std::sin(kPi / (2.0 * r)));
  h.provenance = "optimal mixture of phase square and r-th tensor power";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_gram_sqrt_handle(int r, int n) {
  EmbeddingHandle h;
  h.name = "gram_sqrt";
  h.input = Ambient::real_mat(r, n);
  h.output_dim = n * n;
  h.evaluate = [](const Point& p) { return embed_gram_sqrt(p.as_matrix()); };
  h.alpha_claim = 1.0;
  h.beta_claim = root2();
  h.kappa_claim = KappaClaim::exact(root2());
  h.provenance = "PSD square root of the Gram matrix";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_special_orthogonal_handle(int r, int n) {
  if (r < 2 || n < r) throw ShapeError("special orthogonal handle needs n >= r >= 2");
  EmbeddingHandle h;
  h.name = "special_orthogonal";
  h.input = Ambient::real_mat(r, n);
  h.output_dim = static_cast<int>(n * n + binomial(n, r));
  h.evaluate = [](const Point& p) { return embed_special_orthogonal(p.as_matrix()); };
  // lower bound alpha_phi / sqrt(2); upper sqrt(beta_phi^2 + 2)
  h.alpha_claim = 1.0 / root2();
  h.beta_claim = 2.0;
  h.kappa_claim = KappaClaim::interval(root2(), 2.0 * root2());
  h.provenance = "Gram square root joined with the scaled Plucker invariant";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_chamber_handle(ReflectionFamily family, int n) {
  auto refl = std::make_shared<ReflectionData>(family, n);
  EmbeddingHandle h;
  h.name = "chamber_" + reflection_family_name(family) + std::to_string(n);
  h.input = Ambient::real_vec(refl->dim());
  h.output_dim = refl->dim();
  h.evaluate = [refl](const Point& p) { return refl->fold(p.data).representative; };
  h.alpha_claim = 1.0;
  h.beta_claim = 1.0;
  h.kappa_claim = KappaClaim::exact(1.0);
  h.provenance = "fundamental chamber representative";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_alternating_reflection_handle(ReflectionFamily family, int n) {
  auto refl = std::make_shared<ReflectionData>(family, n);
  GroupActionSpec full(ReflectionGroup{family, n});
  const auto order = group_order(full);
  if (order && *order <= 2) throw UnsupportedFamily("alternating subgroup is trivial");
  EmbeddingHandle h;
  h.name = "alternating_" + reflection_family_name(family) + std::to_string(n);
  h.input = Ambient::real_vec(refl->dim());
  h.output_dim = refl->dim() + 1;
  h.evaluate = [refl](const Point& p) {
    return embed_alternating_reflection(*refl, p.data);
  };
  h.alpha_claim = 1.0 / root2();
  h.beta_claim = root2();
  const int label = refl->max_coxeter_label();
  h.kappa_claim =
      KappaClaim::interval(label * std::sin(kPi / (2.0 * label)), 2.0);
  h.provenance = "chamber fold glued along the walls by the signed wall distance";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle make_circle_arc_handle(double length) {
  EmbeddingHandle h;
  h.name = "circle_arc";
  h.input = Ambient::real_vec(1);
  h.output_dim = 2;
  h.evaluate = [length](const Point& p) {
    const Eigen::Vector2d v = embed_circle_arc(length, p.data[0]);
    Eigen::VectorXd out(2);
    out << v[0], v[1];
    return out;
  };
  h.alpha_claim = 2.0 / kPi;
  h.beta_claim = 1.0;
  h.kappa_claim = KappaClaim::exact(kPi / 2.0);
  h.provenance = "round circle embedding";
  return h;
}

EmbeddingHandle make_rect_torus_handle(const std::vector<double>& lengths) {
  EmbeddingHandle h;
  h.name = "rect_torus";
  h.input = Ambient::real_vec(static_cast<int>(lengths.size()));
  h.output_dim = static_cast<int>(2 * lengths.size());
  h.evaluate = [lengths](const Point& p) { return embed_rect_torus(lengths, p.data); };
  h.alpha_claim = 2.0 / kPi;
  h.beta_claim = 1.0;
  h.kappa_claim = KappaClaim::exact(kPi / 2.0);
  h.provenance = "product of round circle embeddings";
  return h;
}

EmbeddingHandle make_landmarks_handle(EuclideanKind kind, int r, int n) {
  if (n < 2) throw SizeMismatch("landmarks handle needs n >= 2");
  if (kind == EuclideanKind::SE && (r < 2 || n - 1 < r))
    throw ShapeError("SE landmarks need n - 1 >= r >= 2");
  EmbeddingHandle h;
  h.name = kind == EuclideanKind::E ? "landmarks_e" : "landmarks_se";
  h.input = Ambient::real_mat(r, n);
  h.output_dim = kind == EuclideanKind::E
                     ? (n - 1) * (n - 1)
                     : static_cast<int>((n - 1) * (n - 1) + binomial(n - 1, r));
  h.evaluate = [kind](const Point& p) { return embed_landmarks(kind, p.as_matrix()); };
  if (kind == EuclideanKind::E) {
    h.alpha_claim = 1.0;
    h.beta_claim = n >= 3 ? root2() : 1.0;
    h.kappa_claim = KappaClaim::exact(n >= 3 ? root2() : 1.0);
  } else {
    h.alpha_claim = 1.0 / root2();
    h.beta_claim = 2.0;
    h.kappa_claim = KappaClaim::interval(root2(), 2.0 * root2());
  }
  h.provenance = "centered tuple reduced against the translation direction";
  h.positively_homogeneous = true;
  return h;
}

}  // namespace orbitlab
