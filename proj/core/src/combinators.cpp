#include "orbitlab/combinators.hpp"

#include <cmath>
#include <limits>

#include "orbitlab/assignment.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kPropertyProbes = 256;

double root2() { return std::sqrt(2.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Promotion

Eigen::VectorXd PromotedEmbedding::act(int h_index, const Eigen::VectorXd& v) const {
  // psi(h x)_i = phi(g_i h x): block i of the result is block_table[i][h].
  Eigen::VectorXd out(v.size());
  const int k = static_cast<int>(elements.size());
  for (int i = 0; i < k; ++i) {
    out.segment(static_cast<long>(i) * block_dim, block_dim) =
        v.segment(static_cast<long>(block_table[i][h_index]) * block_dim, block_dim);
  }
  return out;
}

double PromotedEmbedding::image_quotient_distance(const Eigen::VectorXd& u,
                                                  const Eigen::VectorXd& v) const {
  double best = std::numeric_limits<double>::infinity();
  for (int h = 0; h < static_cast<int>(elements.size()); ++h) {
    best = std::min(best, (act(h, u) - v).norm());
  }
  return best;
}

PromotedEmbedding promote_equivariant_finite(const EmbeddingHandle& phi,
                                             const GroupActionSpec& group) {
  if (!group.is_finite()) throw InfiniteGroup("promotion needs a finite group");
  if (group.ambient() != phi.input) {
    throw DimensionMismatch("group acts on " + group.ambient().describe() +
                            " but embedding expects " + phi.input.describe());
  }
  PromotedEmbedding out;
  out.elements = elements_of(group);
  out.block_dim = phi.output_dim;
  const int k = static_cast<int>(out.elements.size());
  const Ambient amb = group.ambient();

  // multiplication table on dense matrices
  std::vector<Eigen::MatrixXd> dense;
  dense.reserve(k);
  for (const auto& g : out.elements) dense.push_back(g.dense_matrix(amb));
  out.block_table.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i) {
    for (int h = 0; h < k; ++h) {
      const Eigen::MatrixXd prod = dense[i] * dense[h];
      for (int j = 0; j < k; ++j) {
        if ((prod - dense[j]).norm() <= 1e-8) {
          out.block_table[i][h] = j;
          break;
        }
      }
      if (out.block_table[i][h] < 0)
        throw BadArgument("group elements not closed under product");
    }
  }

  const auto elements = out.elements;
  const auto inner = phi.evaluate;
  const int block = phi.output_dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));

  EmbeddingHandle h;
  h.name = "promoted(" + phi.name + ")";
  h.input = phi.input;
  h.output_dim = k * block;
  h.evaluate = [elements, inner, block, scale](const Point& p) {
    Eigen::VectorXd out(static_cast<long>(elements.size()) * block);
    for (int i = 0; i < static_cast<int>(elements.size()); ++i) {
      out.segment(static_cast<long>(i) * block, block) = scale * inner(elements[i].apply(p));
    }
    return out;
  };
  h.alpha_claim = phi.alpha_claim;
  h.beta_claim = phi.beta_claim;
  h.kappa_claim = phi.kappa_claim;
  h.provenance = "averaged orbit of " + phi.name + " over the group";
  h.positively_homogeneous = phi.positively_homogeneous;
  out.handle = std::move(h);
  return out;
}

QuotientEmbedding descend_to_quotient(const EquivariantMap& map,
                                      const std::function<Point(SplitRng&)>& sampler,
                                      std::uint64_t check_seed) {
  SplitRng rng(check_seed);
  const int k = static_cast<int>(map.group.size());
  for (int probe = 0; probe < kPropertyProbes; ++probe) {
    const Point x = sampler(rng);
    const int g = rng.uniform_int(k);
    const Eigen::VectorXd lhs = map.eval(map.group[g].apply(x));
    const Eigen::VectorXd rhs = map.act_target(g, map.eval(x));
    if ((lhs - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
      throw NotEquivariant("sampled equivariance check failed");
    }
  }

  QuotientEmbedding out;
  out.eval = map.eval;
  const auto act = map.act_target;
  out.image_metric = [act, k](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    double best = std::numeric_limits<double>::infinity();
    for (int g = 0; g < k; ++g) best = std::min(best, (act(g, u) - v).norm());
    return best;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Quotient-orbit combination

EmbeddingHandle quotient_orbit_combine(const EmbeddingHandle& phi,
                                       const OrbitSeparator& psi, double c,
                                       double alpha_phi,
                                       const std::vector<Isometry>& group,
                                       const PointMetric& base_metric,
                                       const std::function<Point(SplitRng&)>& sampler,
                                       std::uint64_t check_seed) {
  const bool c_ok = std::abs(c - 1.0) < 1e-12 || std::abs(c - root2()) < 1e-12 ||
                    std::abs(c - 2.0) < 1e-12;
  if (!c_ok) throw BadArgument("c must be one of 1, sqrt(2), 2");
  if (!(alpha_phi > 0.0)) throw BadArgument("alpha_phi must be positive");

  SplitRng rng(check_seed);
  for (int probe = 0; probe < kPropertyProbes; ++probe) {
    const Point x = sampler(rng);
    const int g = rng.uniform_int(static_cast<int>(group.size()));
    const Eigen::VectorXd px = psi.eval(x);
    const double lhs = (px - psi.act(g, px)).norm();
    const double rhs = base_metric(x, group[g].apply(x));
    if (lhs < rhs - 1e-9) {
      throw PropertyCheckFailed("orbit expansion violated on a sampled probe");
    }
  }

  const auto phi_eval = phi.evaluate;
  const auto psi_eval = psi.eval;
  const double weight = c * alpha_phi;

  EmbeddingHandle h;
  h.name = "quotient_orbit(" + phi.name + ")";
  h.input = phi.input;
  {
    SplitRng probe_rng(check_seed + 1);
    const Point x = sampler(probe_rng);
    h.output_dim = static_cast<int>(phi_eval(x).size() + psi_eval(x).size());
  }
  h.evaluate = [phi_eval, psi_eval, weight](const Point& p) {
    const Eigen::VectorXd a = phi_eval(p);
    const Eigen::VectorXd b = psi_eval(p);
    Eigen::VectorXd out(a.size() + b.size());
    out << a, weight * b;
    return out;
  };
  if (phi.kappa_claim.kind != KappaClaim::Kind::Unknown) {
    const double kp = phi.kappa_claim.hi;
    const double bound = root2() * std::sqrt(kp * kp + c * c * psi.gamma * psi.gamma);
    h.kappa_claim = KappaClaim::interval(1.0, bound);
  }
  h.alpha_claim = alpha_phi / root2();
  if (phi.beta_claim) {
    h.beta_claim = std::sqrt(*phi.beta_claim * *phi.beta_claim +
                             weight * weight * psi.gamma * psi.gamma);
  }
  h.provenance = "quotient embedding joined with an orbit separator";
  return h;
}

// ---------------------------------------------------------------------------
// Glued spaces

GluedEmbedding glue_embed(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& phi,
                          const std::function<double(const Eigen::VectorXd&)>& dist_to_glue,
                          double kappa_phi,
                          const std::vector<Eigen::VectorXd>& probes) {
  if (probes.empty()) throw BadArgument("glue_embed needs probe points");
  bool finite_somewhere = false;
  for (const auto& p : probes) {
    if (std::isfinite(dist_to_glue(p))) { finite_somewhere = true; break; }
  }
  if (!finite_somewhere) throw EmptyGlueSet("distance to the glue set is infinite");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      const double gap = std::abs(dist_to_glue(probes[i]) - dist_to_glue(probes[j]));
      const double dist = (probes[i] - probes[j]).norm();
      if (gap > dist + 1e-9) {
        throw PropertyCheckFailed("glue distance is not 1-Lipschitz on probes");
      }
    }
  }

  GluedEmbedding out;
  out.kappa_claim = root2() * std::sqrt(kappa_phi * kappa_phi + 1.0);
  out.eval = [phi, dist_to_glue](const Eigen::VectorXd& y, int sheet) {
    const Eigen::VectorXd base = phi(y);
    Eigen::VectorXd v(base.size() + 1);
    v << base, static_cast<double>(sheet) * dist_to_glue(y);
    return v;
  };
  return out;
}

// ---------------------------------------------------------------------------
// Contortion table and pipelines

std::vector<ContortionEntry> contortion_table() {
  return {
      {"order 1", 1.0, 1.0, true, "trivial group"},
      {"order 2", root2(), root2(), true, "sign representation"},
      {"order 3", 1.5, 1.5, true, "planar rotation representation"},
      {"C4", 2.0 * std::sqrt(2.0 - root2()), 2.0, false,
       "quarter-turn lower bound, subnormal-series upper bound"},
      {"C2xC2", root2(), 2.0, false, "order-2 subgroup bounds composed"},
      {"order 2^a 3^b", 0.0, 0.0, false,
       "commentary: bounded by sqrt(2)^a (3/2)^b <= sqrt(|G|), not computed"},
  };
}

SymmetrizedEmbedding c2_mod_involution(const PointMap& phi, int phi_dim,
                                       const std::function<Point(const Point&)>& sigma,
                                       const PointMetric& base_metric,
                                       std::optional<double> alpha_phi,
                                       std::optional<double> beta_phi,
                                       const std::function<Point(SplitRng&)>& sampler,
                                       std::uint64_t check_seed) {
  SplitRng rng(check_seed);
  for (int probe = 0; probe < kPropertyProbes; ++probe) {
    const Point x = sampler(rng);
    const Point xx = sigma(sigma(x));
    if (base_metric(xx, x) > 1e-9 * (1.0 + x.data.norm())) {
      throw NotInvolution("sigma o sigma != id on a sampled probe");
    }
  }

  SymmetrizedEmbedding out;
  out.output_dim = phi_dim + phi_dim * (phi_dim + 1) / 2;
  out.eval = [phi, sigma](const Point& p) {
    const Eigen::VectorXd a = phi(p);
    const Eigen::VectorXd b = phi(sigma(p));
    const Eigen::VectorXd sym = 0.5 * (a + b);
    const Eigen::VectorXd anti = 0.5 * (a - b);
    const Eigen::VectorXd folded = embed_real_antipodal(root2() * anti);
    Eigen::VectorXd v(sym.size() + folded.size());
    v << root2() * sym, folded;
    return v;
  };
  out.quotient_metric = [base_metric, sigma](const Point& x, const Point& y) {
    return std::min(base_metric(x, y), base_metric(x, sigma(y)));
  };
  // The swap-coordinate map x -> (s, a) carries phi's exact bounds and
  // descends; the antipodal block contributes its (1, sqrt2) bounds and the
  // whole output is rescaled by sqrt2.
  if (alpha_phi) out.alpha_claim = root2() * *alpha_phi;
  if (beta_phi) out.beta_claim = 2.0 * *beta_phi;
  return out;
}

SymmetrizedEmbedding c2_mod_order3(const PointMap& phi, int phi_dim,
                                   const std::function<Point(const Point&)>& sigma,
                                   const PointMetric& base_metric,
                                   std::optional<double> alpha_phi,
                                   std::optional<double> beta_phi,
                                   const std::function<Point(SplitRng&)>& sampler,
                                   std::uint64_t check_seed) {
  SplitRng rng(check_seed);
  for (int probe = 0; probe < kPropertyProbes; ++probe) {
    const Point x = sampler(rng);
    const Point xxx = sigma(sigma(sigma(x)));
    if (base_metric(xxx, x) > 1e-9 * (1.0 + x.data.norm())) {
      throw NotOrder3("sigma^3 != id on a sampled probe");
    }
  }

  SymmetrizedEmbedding out;
  const long trig_dim = phi_dim;
  const long cyclic_dim = 2 * (static_cast<long>(phi_dim) * phi_dim +
                               static_cast<long>(phi_dim) * phi_dim * phi_dim);
  out.output_dim = static_cast<int>(trig_dim + cyclic_dim);
  out.eval = [phi, sigma, phi_dim](const Point& p) {
    const Eigen::VectorXd u0 = phi(p);
    const Point sp = sigma(p);
    const Eigen::VectorXd u1 = phi(sp);
    const Eigen::VectorXd u2 = phi(sigma(sp));
    // unitary DFT of the stacked blocks (u0, u1, u2)/sqrt3
    const Eigen::VectorXd trivial = (u0 + u1 + u2) / 3.0;
    Eigen::VectorXcd z(phi_dim);
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);  // e^{2 pi i/3}
    for (int i = 0; i < phi_dim; ++i) {
      z[i] = (u0[i] + w * u1[i] + w * w * u2[i]) / 3.0;
    }
    const Eigen::VectorXd folded = embed_scalar_cyclic(3, z);
    Eigen::VectorXd v(trivial.size() + folded.size());
    v << trivial, root2() * folded;
    return v;
  };
  out.quotient_metric = [base_metric, sigma](const Point& x, const Point& y) {
    const Point sy = sigma(y);
    return std::min({base_metric(x, y), base_metric(x, sy), base_metric(x, sigma(sy))});
  };
  out.alpha_claim = alpha_phi;
  if (beta_phi) out.beta_claim = 1.5 * *beta_phi;
  return out;
}

// ---------------------------------------------------------------------------
// Max filter banks

double max_filter_pairing(const GroupActionSpec& group, const Point& x, const Point& y) {
  if (x.ambient != group.ambient() || y.ambient != group.ambient()) {
    throw DimensionMismatch("max_filter_pairing point shape");
  }
  if (const auto* pc = group.get_if<PermuteColumns>()) {
    const Eigen::MatrixXd mx = x.as_matrix();
    const Eigen::MatrixXd my = y.as_matrix();
    Eigen::MatrixXd value(pc->n, pc->n);
    for (int i = 0; i < pc->n; ++i)
      for (int j = 0; j < pc->n; ++j) value(i, j) = mx.col(i).dot(my.col(j));
    return assignment_max_value(value);
  }
  if (!group.is_finite()) throw InfiniteGroup("max_filter_pairing");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& g : elements_of(group)) {
    best = std::max(best, g.apply(x).data.dot(y.data));
  }
  return best;
}

double max_filter_kappa_bound(double group_order) {
  return 4.0 * std::exp(1.5) * std::pow(group_order, 2.5) *
         std::sqrt(std::log(std::exp(1.0) * group_order));
}

std::vector<Point> max_filter_templates(const GroupActionSpec& group, int n_templates,
                                        std::uint64_t template_seed) {
  if (n_templates < 1) throw BadArgument("max_filter_bank needs n >= 1 templates");
  SplitRng rng(template_seed);
  std::vector<Point> templates;
  templates.reserve(n_templates);
  for (int i = 0; i < n_templates; ++i) {
    templates.push_back(random_point(group, 1.0, rng));
  }
  return templates;
}

EmbeddingHandle max_filter_bank_with_templates(const GroupActionSpec& group,
                                               std::vector<Point> templates) {
  if (!group.is_finite()) throw InfiniteGroup("max_filter_bank");
  if (templates.empty()) throw BadArgument("max_filter_bank needs n >= 1 templates");

  EmbeddingHandle h;
  h.name = "max_filter_bank_n" + std::to_string(templates.size());
  h.input = group.ambient();
  h.output_dim = static_cast<int>(templates.size());
  h.evaluate = [group, templates](const Point& p) {
    Eigen::VectorXd out(static_cast<long>(templates.size()));
    for (std::size_t i = 0; i < templates.size(); ++i) {
      out[static_cast<long>(i)] = max_filter_pairing(group, p, templates[i]);
    }
    return out;
  };
  const auto order = group_order(group);
  if (order) {
    h.kappa_claim =
        KappaClaim::interval(1.0, max_filter_kappa_bound(static_cast<double>(*order)));
  }
  h.provenance = "template correlations maximized over the group";
  h.positively_homogeneous = true;
  return h;
}

EmbeddingHandle max_filter_bank(const GroupActionSpec& group, int n_templates,
                                std::uint64_t template_seed) {
  return max_filter_bank_with_templates(
      group, max_filter_templates(group, n_templates, template_seed));
}

// ---------------------------------------------------------------------------
// Wallpaper handles

Point xx_glide(const Wallpaper& w, const Point& p) {
  return Point::make(p.ambient,
                     (Eigen::VectorXd(2) << p.data[0] + w.a / 2.0, -p.data[1]).finished());
}

EmbeddingHandle make_wallpaper_handle(const Wallpaper& w) {
  EmbeddingHandle h;
  h.name = "wallpaper_" + wallpaper_signature_name(w.signature);
  h.input = Ambient::plane();
  h.provenance = "wallpaper quotient embedding";

  if (w.signature == WallpaperSignature::XX) {
    const std::vector<double> lengths{w.a, w.b};
    PointMap torus = [lengths](const Point& p) {
      return embed_rect_torus(lengths, p.data);
    };
    PointMetric torus_metric = [lengths](const Point& x, const Point& y) {
      return dist_rect_torus(lengths, x.data, y.data);
    };
    const Wallpaper wc = w;
    auto sigma = [wc](const Point& p) { return xx_glide(wc, p); };
    auto sampler = [wc](SplitRng& rng) {
      return Point::plane(rng.uniform(0.0, wc.a), rng.uniform(0.0, wc.b));
    };
    auto sym = c2_mod_involution(torus, 4, sigma, torus_metric, 2.0 / kPi, 1.0, sampler);
    h.output_dim = sym.output_dim;
    h.evaluate = sym.eval;
    h.alpha_claim = sym.alpha_claim;
    h.beta_claim = sym.beta_claim;
    h.kappa_claim = KappaClaim::interval(kPi / 2.0, kPi / root2());
    return h;
  }

  const Wallpaper wc = w;
  h.evaluate = [wc](const Point& p) {
    return embed_wallpaper(wc, Eigen::Vector2d(p.data[0], p.data[1]));
  };
  switch (w.signature) {
    case WallpaperSignature::ORect:
      h.output_dim = 4;
      h.alpha_claim = 2.0 / kPi;
      h.beta_claim = 1.0;
      h.kappa_claim = KappaClaim::exact(kPi / 2.0);
      break;
    case WallpaperSignature::StarStar:
      h.output_dim = 3;
      h.alpha_claim = 2.0 / kPi;
      h.beta_claim = 1.0;
      h.kappa_claim = KappaClaim::exact(kPi / 2.0);
      break;
    case WallpaperSignature::TwoStar22:
      h.output_dim = 3;
      h.alpha_claim = 1.0;
      h.beta_claim = root2();
      h.kappa_claim = KappaClaim::exact(root2());
      break;
    case WallpaperSignature::FourStar2:
      h.output_dim = 4;
      h.alpha_claim = 1.0;
      h.beta_claim = 4.0 * std::sin(kPi / 8.0);
      h.kappa_claim = KappaClaim::exact(4.0 * std::sin(kPi / 8.0));
      break;
    case WallpaperSignature::XX:
      break;  // handled above
  }
  return h;
}

}  // namespace orbitlab
