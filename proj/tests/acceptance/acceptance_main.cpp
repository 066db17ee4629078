// Acceptance battery: runs every criterion at its stated scale and prints one
// PASS/FAIL line per criterion. Exit code 0 iff everything passes.
//
// The battery is deliberately loud: each line carries the measured numbers so
// a failure can be diagnosed from the log alone.

#include <Eigen/Dense>
#include <cstdio>
#include <string>
#include <vector>

#include "orbitlab/combinators.hpp"
#include "orbitlab/distortion.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/runner.hpp"
#include "orbitlab/serialize.hpp"
#include "../oracles.hpp"

using namespace orbitlab;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRoot2 = 1.4142135623730950488;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int g_failures = 0;

void report_line(int id, const std::string& label, const Outcome& outcome) {
  std::printf("[%s] criterion %2d: %s%s%s\n", outcome.pass ? "PASS" : "FAIL", id,
              label.c_str(), outcome.detail.empty() ? "" : " -- ",
              outcome.detail.c_str());
  std::fflush(stdout);
  if (!outcome.pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// violations that survive the 1e-6 relative slack of the acceptance contract
std::size_t hard_violations(const DistortionReport& report) {
  std::size_t count = 0;
  for (const auto& v : report.violations) {
    if (v.side == "collapse") {
      ++count;
      continue;
    }
    const double reference = v.claimed_bound * v.quotient_distance;
    if (std::abs(v.embedded_distance - reference) > 1e-6 * std::max(reference, 1e-30)) {
      ++count;
    }
  }
  return count;
}

struct SearchResult {
  double kappa = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

SearchResult both_searches(const EmbeddingHandle& handle, const MetricOracle& oracle,
                           int restarts, std::uint64_t seed) {
  const auto lo =
      adversarial_search(handle, oracle, SearchObjective::MinimizeRatio, restarts, seed);
  const auto hi = adversarial_search(handle, oracle, SearchObjective::MaximizeRatio,
                                     restarts, seed + 1);
  return {hi.ratio / lo.ratio, lo.ratio, hi.ratio};
}

Eigen::MatrixXd random_mat(int r, int n, SplitRng& rng) {
  Eigen::MatrixXd m(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  return m;
}

const EstimateOptions kParallel{2};

// ---------------------------------------------------------------------------

void criterion_1_root_of_unity() {
  Outcome outcome;
  for (int r : {2, 3, 4, 8}) {
    for (int n : {1, 3}) {
      GroupActionSpec spec(ScalarCyclic{r, n});
      const MetricOracle oracle = MetricOracle::standard(spec);
      const auto handle = make_scalar_cyclic_handle(r, n);
      const auto pairs =
          sample_pairs(spec, 100000, MixWeights{0.5, 0.25, 0.25}, 1000 + 10 * r + n);
      const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
      const auto search = both_searches(handle, oracle, 50, 1100 + 10 * r + n);
      const double target = r * std::sin(kPi / (2.0 * r));
      const std::string tag = "r=" + std::to_string(r) + ",n=" + std::to_string(n);
      outcome.require(hard_violations(report) == 0, tag + " violations");
      outcome.require(search.kappa >= 0.99 * target,
                      tag + " adversarial kappa " + fmt(search.kappa) + " < 0.99*" +
                          fmt(target));
      outcome.require(search.kappa <= target * (1.0 + 1e-6),
                      tag + " adversarial kappa " + fmt(search.kappa) + " above " +
                          fmt(target));
    }
  }
  report_line(1, "root-of-unity embedding: zero violations, tight constant", outcome);
}

void criterion_2_gram_sqrt() {
  Outcome outcome;
  for (int r : {2, 3}) {
    for (int n : {2, 4}) {
      GroupActionSpec spec(OrthogonalLeft{r, n});
      const MetricOracle oracle = MetricOracle::standard(spec);
      const auto handle = make_gram_sqrt_handle(r, n);
      const auto pairs =
          sample_pairs(spec, 100000, MixWeights{0.5, 0.25, 0.25}, 2000 + 10 * r + n);
      const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
      const std::string tag = "r=" + std::to_string(r) + ",n=" + std::to_string(n);
      outcome.require(hard_violations(report) == 0, tag + " violations");
      outcome.require(report.kappa_hat <= kRoot2 + 1e-6,
                      tag + " kappa_hat " + fmt(report.kappa_hat));
      const auto search = both_searches(handle, oracle, 50, 2100 + 10 * r + n);
      outcome.require(search.kappa >= 0.99 * kRoot2,
                      tag + " adversarial kappa " + fmt(search.kappa));
    }
  }
  // closed form versus the reflection-and-rotation grid oracle at r = 2
  SplitRng rng(2200);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd x = random_mat(2, 3, rng);
    const Eigen::MatrixXd y = random_mat(2, 3, rng);
    worst = std::max(worst,
                     std::abs(dist_orthogonal(x, y) - oracle::o2_min_distance(x, y)));
  }
  outcome.require(worst <= 1e-6, "grid cross-check error " + fmt(worst));
  report_line(2, "Gram square root: sqrt(2) ceiling and grid cross-check", outcome);
}

void criterion_3_trace_maximum() {
  Outcome outcome;
  SplitRng rng(3000);
  double worst2 = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::MatrixXd m = random_mat(2, 2, rng);
    worst2 = std::max(worst2, std::abs(so_trace_max(m) - oracle::so2_trace_max(m)));
  }
  outcome.require(worst2 <= 1e-6, "2x2 grid gap " + fmt(worst2));

  double low_gap = 0.0, high_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix3d m = random_mat(3, 3, rng);
    const double closed = so_trace_max(m);
    const double sampled = oracle::so3_trace_max_sampled(m, 16, rng);
    low_gap = std::max(low_gap, sampled - closed);    // closed >= sampled - 1e-6
    high_gap = std::max(high_gap, closed - sampled);  // closed <= sampled + 1e-3
  }
  outcome.require(low_gap <= 1e-6, "3x3 sampled exceeded closed by " + fmt(low_gap));
  outcome.require(high_gap <= 1e-3, "3x3 closed exceeded sampled by " + fmt(high_gap));
  report_line(3, "rotation trace maximum vs grid and sampled maximization", outcome);
}

void criterion_4_rotation_embedding() {
  Outcome outcome;
  const std::vector<std::pair<int, int>> shapes = {{2, 2}, {2, 4}, {3, 4}};
  for (const auto& [r, n] : shapes) {
    GroupActionSpec spec(SpecialOrthogonalLeft{r, n});
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_special_orthogonal_handle(r, n);
    const auto pairs =
        sample_pairs(spec, 100000, MixWeights{0.5, 0.25, 0.25}, 4000 + 10 * r + n);
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    const std::string tag = "r=" + std::to_string(r) + ",n=" + std::to_string(n);
    outcome.require(hard_violations(report) == 0, tag + " violations");
    outcome.require(report.alpha_hat >= 1.0 / kRoot2 - 1e-6,
                    tag + " alpha_hat " + fmt(report.alpha_hat));
    outcome.require(report.beta_hat <= 2.0 * kRoot2 * (1.0 + 1e-6),
                    tag + " beta_hat " + fmt(report.beta_hat));
  }

  // the mirrored-identity witness pair
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd neg(2, 2);
  neg << 1, 0, 0, -1;
  const double quotient = dist_special_orthogonal(id, neg);
  const double grid = oracle::so2_min_distance(id, neg);
  const double embedded =
      (embed_special_orthogonal(id) - embed_special_orthogonal(neg)).norm();
  outcome.require(std::abs(quotient - 2.0) <= 1e-9, "witness quotient " + fmt(quotient));
  outcome.require(std::abs(grid - 2.0) <= 1e-6, "witness grid oracle " + fmt(grid));
  outcome.require(std::abs(embedded - 2.0 * kRoot2) <= 1e-9,
                  "witness embedded " + fmt(embedded));
  report_line(4, "rotation-aware embedding: ratio window and witness pair", outcome);
}

void criterion_5_reflection_chambers() {
  Outcome outcome;
  const std::vector<std::pair<ReflectionFamily, int>> cases = {
      {ReflectionFamily::A, 4}, {ReflectionFamily::B, 3}, {ReflectionFamily::I2, 6}};
  for (const auto& [family, n] : cases) {
    GroupActionSpec spec(ReflectionGroup{family, n});
    const MetricOracle oracle(spec, MetricStrategy::BruteForceFinite);
    const auto handle = make_chamber_handle(family, n);
    // the claim is a constant ratio, so the point estimate uses
    // well-separated pairs; kink probing happens via the violation check on
    // the mixed sample, whose tolerance absorbs the resolution floor
    const auto pairs = sample_pairs(spec, 20000, MixWeights{1.0, 0.0, 0.0}, 5000 + n);
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    const auto mixed = sample_pairs(spec, 20000, MixWeights{0.5, 0.25, 0.25}, 5050 + n);
    const auto mixed_report = estimate_distortion(handle, oracle, mixed, kParallel);
    const std::string tag = reflection_family_name(family) + "(" + std::to_string(n) + ")";
    outcome.require(std::abs(report.kappa_hat - 1.0) <= 1e-9,
                    tag + " kappa_hat " + fmt(report.kappa_hat));
    outcome.require(hard_violations(mixed_report) == 0, tag + " mixed-sample violations");
  }
  report_line(5, "reflection chambers embed isometrically", outcome);
}

void criterion_6_alternating() {
  Outcome outcome;
  for (int m : {3, 4, 6}) {
    GroupActionSpec spec(AlternatingReflection{ReflectionFamily::I2, m});
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_alternating_reflection_handle(ReflectionFamily::I2, m);
    const auto pairs = sample_pairs(spec, 100000, MixWeights{0.5, 0.25, 0.25}, 6000 + m);
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    const std::string tag = "I2(" + std::to_string(m) + ")";
    outcome.require(hard_violations(report) == 0, tag + " violations");
    // ratios normalized by the declared lower bound land in [1, 2]
    const double norm_lo = report.alpha_hat / *handle.alpha_claim;
    const double norm_hi = report.beta_hat / *handle.alpha_claim;
    outcome.require(norm_lo >= 1.0 - 1e-6, tag + " normalized low " + fmt(norm_lo));
    outcome.require(norm_hi <= 2.0 + 1e-6, tag + " normalized high " + fmt(norm_hi));
    const auto search = both_searches(handle, oracle, 50, 6100 + m);
    const double target = m * std::sin(kPi / (2.0 * m));
    outcome.require(search.kappa >= 0.99 * target,
                    tag + " adversarial kappa " + fmt(search.kappa) + " target " +
                        fmt(target));
  }
  report_line(6, "alternating dihedral subgroups: window and lower constant", outcome);
}

void criterion_7_wallpaper() {
  Outcome outcome;
  struct ExactCase {
    WallpaperSignature sig;
    double constant;
  };
  const std::vector<ExactCase> exact_cases = {
      {WallpaperSignature::StarStar, kPi / 2.0},
      {WallpaperSignature::TwoStar22, kRoot2},
      {WallpaperSignature::FourStar2, 2.0 * std::sqrt(2.0 - kRoot2)},
  };
  for (const auto& c : exact_cases) {
    Wallpaper w{c.sig, 1.0, 1.0};
    GroupActionSpec spec(w);
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_wallpaper_handle(w);
    const auto pairs = sample_pairs(spec, 100000, MixWeights{0.5, 0.25, 0.25},
                                    7000 + static_cast<int>(c.sig));
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    const std::string tag = wallpaper_signature_name(c.sig);
    outcome.require(hard_violations(report) == 0, tag + " violations");
    const auto search = both_searches(handle, oracle, 50, 7100 + static_cast<int>(c.sig));
    outcome.require(std::abs(search.kappa - c.constant) <= 0.01 * c.constant,
                    tag + " adversarial kappa " + fmt(search.kappa) + " constant " +
                        fmt(c.constant));
  }

  // Klein bottle: two-sided window with the geodesic-circle witness family
  {
    Wallpaper pg{WallpaperSignature::XX, 1.0, 1.0};
    GroupActionSpec spec(pg);
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_wallpaper_handle(pg);
    auto pairs = sample_pairs(spec, 20000, MixWeights{0.5, 0.25, 0.25}, 7300);
    // pairs along the glide-axis circle y = 0, including near-antipodal ones
    SplitRng rng(7301);
    for (int i = 0; i < 2000; ++i) {
      const double u = rng.uniform();
      double v;
      if (i % 2 == 0) {
        v = u + 0.25;  // antipodal on the circle of circumference 1/2
      } else {
        v = u + rng.uniform(1e-6, 1e-3);
      }
      pairs.push_back({Point::plane(u, 0.0), Point::plane(v, 0.0)});
    }
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    outcome.require(hard_violations(report) == 0, "xx violations");
    outcome.require(report.kappa_hat <= kPi / kRoot2 + 1e-3,
                    "xx kappa_hat " + fmt(report.kappa_hat));
    outcome.require(report.kappa_hat >= 0.99 * kPi / 2.0,
                    "xx kappa_hat " + fmt(report.kappa_hat) + " below 0.99*pi/2");
  }

  // the lattice search agrees with the torus closed form on o-rect
  {
    Wallpaper flat{WallpaperSignature::ORect, 1.0, 1.0};
    SplitRng rng(7400);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector2d x(rng.gaussian(), rng.gaussian());
      const Eigen::Vector2d y(rng.gaussian(), rng.gaussian());
      worst = std::max(worst, std::abs(dist_wallpaper(flat, x, y) -
                                       dist_rect_torus({1.0, 1.0}, x, y)));
    }
    outcome.require(worst <= 1e-12, "o-rect vs torus gap " + fmt(worst));
  }
  report_line(7, "wallpaper quotients: exact constants and Klein window", outcome);
}

void criterion_8_landmarks() {
  Outcome outcome;
  {
    GroupActionSpec spec(EuclideanDiag{2, 2});
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_landmarks_handle(EuclideanKind::E, 2, 2);
    // orbits here have codimension one, so orbit-hugging pairs fall below the
    // double-precision ratio floor; the isometry claim is a constant ratio
    // and is estimated on separated pairs, with the kink probing left to the
    // floor-tolerant violation check
    const auto pairs = sample_pairs(spec, 20000, MixWeights{1.0, 0.0, 0.0}, 8000);
    const auto report = estimate_distortion(handle, oracle, pairs, kParallel);
    outcome.require(std::abs(report.kappa_hat - 1.0) <= 1e-6,
                    "n=2 kappa_hat " + fmt(report.kappa_hat));
    const auto mixed = sample_pairs(spec, 20000, MixWeights{0.5, 0.25, 0.25}, 8050);
    const auto mixed_report = estimate_distortion(handle, oracle, mixed, kParallel);
    outcome.require(hard_violations(mixed_report) == 0, "n=2 mixed-sample violations");
  }
  {
    GroupActionSpec spec(EuclideanDiag{2, 4});
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto handle = make_landmarks_handle(EuclideanKind::E, 2, 4);
    const auto search = both_searches(handle, oracle, 50, 8100);
    outcome.require(search.kappa >= 0.99 * kRoot2,
                    "n=4 adversarial kappa " + fmt(search.kappa));
    outcome.require(search.kappa <= kRoot2 + 1e-6,
                    "n=4 adversarial kappa " + fmt(search.kappa) + " above sqrt2");

    // translation invariance of the quotient metric
    SplitRng rng(8200);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(spec, 1.0, rng);
      const Point y = random_point(spec, 1.0, rng);
      Eigen::MatrixXd shifted = x.as_matrix();
      shifted.colwise() += Eigen::Vector2d(rng.gaussian(), rng.gaussian());
      const double base = oracle.distance(x, y);
      const double moved = oracle.distance(Point::from_matrix(shifted), y);
      worst = std::max(worst, std::abs(base - moved));
    }
    outcome.require(worst <= 1e-10, "translation invariance gap " + fmt(worst));
  }
  report_line(8, "landmark quotients: isometric pairs and sqrt(2) at n=4", outcome);
}

void criterion_9_combinators() {
  Outcome outcome;
  PointMetric euclid = [](const Point& a, const Point& b) {
    return (a.data - b.data).norm();
  };

  // promotion: empirical kappa never worsens on a group-closed sample
  {
    FiniteLinear c4;
    c4.dim = 2;
    for (int k = 0; k < 4; ++k) c4.elements.push_back(oracle::rot2(kPi * k / 2.0));
    GroupActionSpec spec(std::move(c4));
    Eigen::MatrixXd a(2, 2);
    a << 2.0, 0.5, 0.0, 1.0;
    EmbeddingHandle phi;
    phi.name = "linear";
    phi.input = spec.ambient();
    phi.output_dim = 2;
    phi.evaluate = [a](const Point& p) -> Eigen::VectorXd { return a * p.data; };
    const auto promoted = promote_equivariant_finite(phi, spec);
    SplitRng rng(9000);
    double phi_lo = 1e300, phi_hi = 0.0, psi_lo = 1e300, psi_hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(spec, 1.0, rng);
      const Point y = random_point(spec, 1.0, rng);
      const double d = (x.data - y.data).norm();
      if (d < 1e-10) continue;
      const double rp =
          (promoted.handle.evaluate(x) - promoted.handle.evaluate(y)).norm() / d;
      psi_lo = std::min(psi_lo, rp);
      psi_hi = std::max(psi_hi, rp);
      for (const auto& g : promoted.elements) {
        const double r = (phi.evaluate(g.apply(x)) - phi.evaluate(g.apply(y))).norm() / d;
        phi_lo = std::min(phi_lo, r);
        phi_hi = std::max(phi_hi, r);
      }
    }
    outcome.require(psi_hi / psi_lo <= phi_hi / phi_lo + 1e-6,
                    "promotion kappa " + fmt(psi_hi / psi_lo) + " vs source " +
                        fmt(phi_hi / phi_lo));

    // descent through the induced action keeps the window
    EquivariantMap map;
    map.input = spec.ambient();
    map.eval = promoted.handle.evaluate;
    map.group = promoted.elements;
    map.act_target = [&promoted](int g, const Eigen::VectorXd& v) {
      return promoted.act(g, v);
    };
    const auto descended = descend_to_quotient(
        map, [spec](SplitRng& r) { return random_point(spec, 1.0, r); });
    const MetricOracle quotient_oracle = MetricOracle::standard(spec);
    double q_lo = 1e300, q_hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(spec, 1.0, rng);
      const Point y = random_point(spec, 1.0, rng);
      const double d = quotient_oracle.distance(x, y);
      if (d < 1e-10) continue;
      const double r = descended.image_metric(descended.eval(x), descended.eval(y)) / d;
      q_lo = std::min(q_lo, r);
      q_hi = std::max(q_hi, r);
    }
    outcome.require(q_hi / q_lo <= psi_hi / psi_lo + 1e-6,
                    "descent kappa " + fmt(q_hi / q_lo));
  }

  // quotient-orbit bound on the plane-projection example
  {
    FiniteLinear c4z;
    c4z.dim = 3;
    for (int k = 0; k < 4; ++k) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
      m.topLeftCorner<2, 2>() = oracle::rot2(kPi * k / 2.0);
      c4z.elements.push_back(m);
    }
    GroupActionSpec spec(std::move(c4z));
    const auto elems = elements_of(spec);
    EmbeddingHandle phi;
    phi.name = "cyclic_plane_and_height";
    phi.input = Ambient::real_vec(3);
    {
      Eigen::VectorXcd probe(1);
      probe << std::complex<double>(1.0, 0.0);
      phi.output_dim = 1 + static_cast<int>(embed_scalar_cyclic(4, probe).size());
    }
    phi.evaluate = [](const Point& p) {
      Eigen::VectorXcd z(1);
      z[0] = std::complex<double>(p.data[0], p.data[1]);
      const Eigen::VectorXd cyc = embed_scalar_cyclic(4, z);
      Eigen::VectorXd out(1 + cyc.size());
      out << p.data[2], cyc;
      return out;
    };
    const double kappa_phi = 4.0 * std::sin(kPi / 8.0);
    phi.kappa_claim = KappaClaim::exact(kappa_phi);
    OrbitSeparator psi;
    psi.eval = [](const Point& p) -> Eigen::VectorXd { return p.data.head(2); };
    const Ambient amb3 = Ambient::real_vec(3);
    psi.act = [elems, amb3](int g, const Eigen::VectorXd& v) -> Eigen::VectorXd {
      return elems[g].dense_matrix(amb3).topLeftCorner<2, 2>() * v;
    };
    psi.gamma = 1.0;
    const auto combined = quotient_orbit_combine(
        phi, psi, 2.0, 1.0, elems, euclid,
        [spec](SplitRng& r) { return random_point(spec, 1.0, r); });
    const double bound = kRoot2 * std::sqrt(kappa_phi * kappa_phi + 4.0);
    SplitRng rng(9100);
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(spec, 1.0, rng);
      const Point y = random_point(spec, 1.0, rng);
      const double d = (x.data - y.data).norm();
      if (d < 1e-10) continue;
      const double r = (combined.evaluate(x) - combined.evaluate(y)).norm() / d;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    outcome.require(hi / lo <= bound * (1.0 + 1e-6),
                    "quotient-orbit kappa " + fmt(hi / lo) + " bound " + fmt(bound));
  }

  // glued disk stays within kappa <= 2
  {
    auto identity2 = [](const Eigen::VectorXd& y) { return y; };
    auto rim_distance = [](const Eigen::VectorXd& y) { return 1.0 - y.norm(); };
    SplitRng rng(9200);
    std::vector<Eigen::VectorXd> probes;
    auto disk_point = [&rng]() {
      Eigen::VectorXd p(2);
      const double radius = std::sqrt(rng.uniform());
      const double angle = rng.uniform(0.0, 2.0 * kPi);
      p << radius * std::cos(angle), radius * std::sin(angle);
      return p;
    };
    for (int i = 0; i < 64; ++i) probes.push_back(disk_point());
    const auto glued = glue_embed(identity2, rim_distance, 1.0, probes);
    GlueSet circle;
    for (int k = 0; k < 10000; ++k) {
      const double t = 2.0 * kPi * k / 10000;
      circle.samples.push_back(
          (Eigen::VectorXd(2) << std::cos(t), std::sin(t)).finished());
    }
    auto flat = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return (a - b).norm();
    };
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const Eigen::VectorXd a = disk_point();
      const Eigen::VectorXd b = disk_point();
      const int sa = rng.uniform() < 0.5 ? 1 : -1;
      const int sb = rng.uniform() < 0.5 ? 1 : -1;
      const double d = dist_glued(flat, circle, a, sa, b, sb);
      if (d < 1e-9) continue;
      const double r = (glued.eval(a, sa) - glued.eval(b, sb)).norm() / d;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    outcome.require(hi / lo <= 2.0, "glued disk kappa " + fmt(hi / lo));
  }

  // order-2 pipeline on (R^2, -id): adversarial window around sqrt(2)
  {
    FiniteLinear fl;
    fl.dim = 2;
    fl.elements = {Eigen::MatrixXd::Identity(2, 2), -Eigen::MatrixXd::Identity(2, 2)};
    GroupActionSpec signs(std::move(fl));
    PointMap identity_map = [](const Point& p) { return p.data; };
    auto negate = [](const Point& p) { return Point{p.ambient, -p.data}; };
    auto sym =
        c2_mod_involution(identity_map, 2, negate, euclid, 1.0, 1.0,
                          [signs](SplitRng& r) { return random_point(signs, 1.0, r); });
    const MetricOracle sign_oracle = MetricOracle::standard(signs);
    const auto starts_lo =
        sample_pairs(signs, 50, MixWeights{1. / 3, 1. / 3, 1. / 3}, 9300);
    const auto starts_hi =
        sample_pairs(signs, 50, MixWeights{1. / 3, 1. / 3, 1. / 3}, 9301);
    PointMetric sign_metric = [&sign_oracle](const Point& a, const Point& b) {
      return sign_oracle.distance(a, b);
    };
    const auto lo = adversarial_search(sym.eval, sign_metric,
                                       SearchObjective::MinimizeRatio, starts_lo);
    const auto hi = adversarial_search(sym.eval, sign_metric,
                                       SearchObjective::MaximizeRatio, starts_hi);
    const double kappa = hi.ratio / lo.ratio;
    outcome.require(kappa >= 0.99 * kRoot2, "order-2 pipeline kappa " + fmt(kappa));
    outcome.require(kappa <= kRoot2 + 1e-6, "order-2 pipeline kappa " + fmt(kappa));

    // composing both axis flips realizes the four-group within kappa <= 2
    auto flip_x = [](const Point& p) {
      Eigen::VectorXd v = p.data;
      v[0] = -v[0];
      return Point{p.ambient, v};
    };
    auto flip_y = [](const Point& p) {
      Eigen::VectorXd v = p.data;
      v[1] = -v[1];
      return Point{p.ambient, v};
    };
    auto sampler = [signs](SplitRng& r) { return random_point(signs, 1.0, r); };
    auto first = c2_mod_involution(identity_map, 2, flip_x, euclid, 1.0, 1.0, sampler);
    auto second = c2_mod_involution(first.eval, first.output_dim, flip_y,
                                    first.quotient_metric, *first.alpha_claim,
                                    *first.beta_claim, sampler);
    FiniteLinear four;
    four.dim = 2;
    four.elements = {Eigen::MatrixXd::Identity(2, 2), -Eigen::MatrixXd::Identity(2, 2),
                     (Eigen::MatrixXd(2, 2) << -1, 0, 0, 1).finished(),
                     (Eigen::MatrixXd(2, 2) << 1, 0, 0, -1).finished()};
    GroupActionSpec klein4(std::move(four));
    const MetricOracle four_oracle = MetricOracle::standard(klein4);
    SplitRng rng(9400);
    double flo = 1e300, fhi = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Point x = random_point(klein4, 1.0, rng);
      const Point y = random_point(klein4, 1.0, rng);
      const double d = four_oracle.distance(x, y);
      if (d < 1e-10) continue;
      const double r = (second.eval(x) - second.eval(y)).norm() / d;
      flo = std::min(flo, r);
      fhi = std::max(fhi, r);
    }
    outcome.require(fhi / flo <= 2.0 + 1e-6, "double involution kappa " + fmt(fhi / flo));
  }
  report_line(9, "combinator inequalities hold on randomized constructions", outcome);
}

void criterion_10_max_filter_bank() {
  Outcome outcome;
  FiniteLinear fl;
  fl.dim = 3;
  fl.elements = {Eigen::MatrixXd::Identity(3, 3), -Eigen::MatrixXd::Identity(3, 3)};
  GroupActionSpec signs(std::move(fl));
  const auto bank = max_filter_bank(signs, 6, 1001);
  const double bound = max_filter_kappa_bound(2.0);

  SplitRng rng(10000);
  double invariance_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(signs, 1.0, rng);
    const Isometry g = random_group_probe(signs, rng);
    invariance_gap =
        std::max(invariance_gap, (bank.evaluate(g.apply(x)) - bank.evaluate(x)).norm());
  }
  outcome.require(invariance_gap <= 1e-10, "invariance gap " + fmt(invariance_gap));

  const MetricOracle oracle = MetricOracle::standard(signs);
  const auto pairs = sample_pairs(signs, 20000, MixWeights{0.5, 0.25, 0.25}, 10100);
  const auto report = estimate_distortion(bank, oracle, pairs, kParallel);
  outcome.require(std::isfinite(report.kappa_hat) && report.kappa_hat > 0.0,
                  "kappa_hat not finite");
  outcome.require(report.kappa_hat <= bound,
                  "kappa_hat " + fmt(report.kappa_hat) + " bound " + fmt(bound));

  double polarization_gap = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(signs, 1.0, rng);
    const Point y = random_point(signs, 1.0, rng);
    const double d = oracle.distance(x, y);
    const double pairing = max_filter_pairing(signs, x, y);
    const double expected = 0.5 * (x.data.squaredNorm() + y.data.squaredNorm() - d * d);
    polarization_gap = std::max(polarization_gap, std::abs(pairing - expected));
  }
  outcome.require(polarization_gap <= 1e-10, "polarization gap " + fmt(polarization_gap));
  report_line(10, "max filter bank: invariance, finite kappa, polarization", outcome);
}

void criterion_11_assignment_oracle() {
  Outcome outcome;
  SplitRng rng(11000);
  double worst = 0.0;
  for (int d : {1, 2, 3}) {
    for (int n = 2; n <= 6; ++n) {
      for (int trial = 0; trial < 200; ++trial) {
        const Eigen::MatrixXd x = random_mat(d, n, rng);
        const Eigen::MatrixXd y = random_mat(d, n, rng);
        worst = std::max(worst, std::abs(dist_permutation_wasserstein(x, y) -
                                         oracle::wasserstein_brute(x, y)));
      }
    }
  }
  outcome.require(worst <= 1e-10, "assignment vs brute force gap " + fmt(worst));
  report_line(11, "assignment solver equals permutation brute force", outcome);
}

void criterion_12_determinism() {
  Outcome outcome;
  ExperimentConfig cfg;
  cfg.label = "determinism_probe";
  cfg.action = "special_orthogonal_left(r=2,n=3)";
  cfg.embedding = "special_orthogonal";
  cfg.pairs = 5000;
  cfg.restarts = 5;
  cfg.seed = 2026;

  auto strip_runtime = [](std::string json) {
    const auto pos = json.find("\"runtime_seconds\"");
    if (pos == std::string::npos) return json;
    const auto end = json.find('\n', pos);
    return json.erase(pos, end - pos);
  };
  const std::string serial = strip_runtime(run_estimate_to_json(cfg, 1));
  const std::string parallel = strip_runtime(run_estimate_to_json(cfg, 8));
  outcome.require(!serial.empty(), "empty report");
  outcome.require(serial == parallel, "reports differ across 1 and 8 workers");
  report_line(12, "reports are byte-identical across worker counts", outcome);
}

// Desk-scale substitute for the asymptotic permutation results: the empirical
// distortion of a max filter bank over column permutations, reported as a
// trend (table plus chart) without a threshold.
void permutation_trend() {
  std::printf("[info] permutation bank distortion trend ((R^3)^n / S_n):\n");
  std::vector<ReportSummary> rows;
  for (int n = 4; n <= 12; ++n) {
    GroupActionSpec spec(PermuteColumns{3, n});
    const MetricOracle oracle = MetricOracle::standard(spec);
    const auto bank = max_filter_bank(spec, 6 * n, 12000 + n);
    const auto pairs = sample_pairs(spec, 400, MixWeights{0.5, 0.25, 0.25}, 12100 + n);
    const auto report = estimate_distortion(bank, oracle, pairs, kParallel);
    std::printf("[info]   n = %2d  kappa_hat = %.4f\n", n, report.kappa_hat);
    std::fflush(stdout);
    rows.push_back({"n=" + std::to_string(n), report.kappa_hat, 0.0, 0.0});
  }
  std::FILE* svg = std::fopen("permutation_trend.svg", "w");
  if (svg) {
    const std::string chart = render_kappa_svg(rows);
    std::fwrite(chart.data(), 1, chart.size(), svg);
    std::fclose(svg);
    std::printf("[info] trend chart written to permutation_trend.svg\n");
  }
}

}  // namespace

int main() {
  std::printf("acceptance battery (desk scale)\n");
  criterion_1_root_of_unity();
  criterion_2_gram_sqrt();
  criterion_3_trace_maximum();
  criterion_4_rotation_embedding();
  criterion_5_reflection_chambers();
  criterion_6_alternating();
  criterion_7_wallpaper();
  criterion_8_landmarks();
  criterion_9_combinators();
  criterion_10_max_filter_bank();
  criterion_11_assignment_oracle();
  criterion_12_determinism();
  permutation_trend();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
