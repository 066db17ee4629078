#include "orbitlab/distortion.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegeneratePair = 1e-12;
constexpr double kCollapseTol = 1e-9;

double ratio_of(const Eigen::VectorXd& fx, const Eigen::VectorXd& fy, double d) {
  return (fx - fy).norm() / d;
}

}  // namespace

// ---------------------------------------------------------------------------
// sample_pairs

std::vector<PairSample> sample_pairs(const GroupActionSpec& spec, std::size_t n,
                                     const MixWeights& mix, std::uint64_t seed,
                                     double scale) {
  if (mix.independent < 0.0 || mix.near_diagonal < 0.0 || mix.near_orbit < 0.0 ||
      std::abs(mix.independent + mix.near_diagonal + mix.near_orbit - 1.0) > 1e-9) {
    throw BadMix("mix weights must be nonnegative and sum to 1");
  }
  const Ambient amb = spec.ambient();
  SplitRng root(seed);
  std::vector<PairSample> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitRng rng = root.split(i);
    const double which = rng.uniform();

    Eigen::VectorXd xd(amb.real_dim());
    for (int k = 0; k < xd.size(); ++k) xd[k] = scale * rng.gaussian();
    Point x = Point::make(amb, xd);

    Point y = Point::zero(amb);
    if (which < mix.independent) {
      Eigen::VectorXd yd(amb.real_dim());
      for (int k = 0; k < yd.size(); ++k) yd[k] = scale * rng.gaussian();
      y = Point::make(amb, yd);
    } else {
      const double eps = (i % 2 == 0) ? 1e-3 : 1e-6;
      Eigen::VectorXd dir(amb.real_dim());
      for (int k = 0; k < dir.size(); ++k) dir[k] = rng.gaussian();
      dir.normalize();
      if (which < mix.independent + mix.near_diagonal) {
        y = Point::make(amb, x.data + eps * x.data.norm() * dir);
      } else {
        const Isometry g = random_group_probe(spec, rng);
        const Point gx = g.apply(x);
        y = Point::make(amb, gx.data + eps * x.data.norm() * dir);
      }
    }
    pairs.push_back({std::move(x), std::move(y)});
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// estimate_distortion

DistortionReport DistortionReport::merge(const DistortionReport& a,
                                         const DistortionReport& b) {
  DistortionReport out = a;
  if (b.witness_min && (!out.witness_min || b.witness_min->ratio < out.witness_min->ratio)) {
    out.witness_min = b.witness_min;
  }
  if (b.witness_max && (!out.witness_max || b.witness_max->ratio > out.witness_max->ratio)) {
    out.witness_max = b.witness_max;
  }
  out.alpha_hat = out.witness_min ? out.witness_min->ratio : 0.0;
  out.beta_hat = out.witness_max ? out.witness_max->ratio : 0.0;
  out.kappa_hat = out.alpha_hat > 0.0 ? out.beta_hat / out.alpha_hat
                                      : std::numeric_limits<double>::infinity();
  out.n_pairs += b.n_pairs;
  out.violations.insert(out.violations.end(), b.violations.begin(), b.violations.end());
  out.runtime_seconds += b.runtime_seconds;
  return out;
}

DistortionReport estimate_distortion(const PointMap& eval, const PointMetric& metric,
                                     const std::vector<PairSample>& pairs,
                                     std::optional<double> alpha_claim,
                                     std::optional<double> beta_claim,
                                     std::uint64_t seed, const EstimateOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = pairs.size();

  struct PairResult {
    double d = 0.0;
    double e = 0.0;
  };
  std::vector<PairResult> results(n);

  const int threads = std::max(1, options.threads);
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = metric(pairs[i].x, pairs[i].y);
      const double e = (eval(pairs[i].x) - eval(pairs[i].y)).norm();
      results[i] = {d, e};
    }
  };
  if (threads == 1 || n < 2) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(n, t * chunk);
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Sequential reduction in index order keeps reports identical across
  // worker counts.
  DistortionReport report;
  report.n_pairs = n;
  report.seed = seed;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pr = results[i];
    if (pr.d <= kDegeneratePair) {
      if (pr.e > kCollapseTol) {
        report.violations.push_back(
            {pairs[i].x, pairs[i].y, pr.d, pr.e, kCollapseTol, "collapse"});
      }
      continue;
    }
    const double ratio = pr.e / pr.d;
    ++valid;
    if (!report.witness_min || ratio < report.witness_min->ratio) {
      report.witness_min = WitnessPair{pairs[i].x, pairs[i].y, ratio};
    }
    if (!report.witness_max || ratio > report.witness_max->ratio) {
      report.witness_max = WitnessPair{pairs[i].x, pairs[i].y, ratio};
    }
    const double slack = 1e-9 * (1.0 + pr.d);
    if (beta_claim && pr.e > *beta_claim * pr.d + slack) {
      report.violations.push_back(
          {pairs[i].x, pairs[i].y, pr.d, pr.e, *beta_claim, "upper"});
    }
    if (alpha_claim && pr.e < *alpha_claim * pr.d - slack) {
      report.violations.push_back(
          {pairs[i].x, pairs[i].y, pr.d, pr.e, *alpha_claim, "lower"});
    }
  }
  if (valid == 0) throw NoValidPairs("all sampled pairs were orbit-degenerate");
  report.alpha_hat = report.witness_min->ratio;
  report.beta_hat = report.witness_max->ratio;
  report.kappa_hat = report.beta_hat / report.alpha_hat;
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

DistortionReport estimate_distortion(const EmbeddingHandle& handle,
                                     const MetricOracle& oracle,
                                     const std::vector<PairSample>& pairs,
                                     const EstimateOptions& options) {
  if (handle.input != oracle.action().ambient()) {
    throw DimensionMismatch("handle input does not match the oracle's ambient space");
  }
  PointMetric metric = [&oracle](const Point& a, const Point& b) {
    return oracle.distance(a, b);
  };
  return estimate_distortion(handle.evaluate, metric, pairs, handle.alpha_claim,
                             handle.beta_claim, 0, options);
}

// ---------------------------------------------------------------------------
// adversarial_search

AdversarialResult adversarial_search(const PointMap& eval, const PointMetric& metric,
                                     SearchObjective objective,
                                     const std::vector<PairSample>& starts) {
  if (starts.empty()) throw BadArgument("adversarial_search needs at least one start");
  const bool maximize = objective == SearchObjective::MaximizeRatio;
  const double worst = maximize ? -std::numeric_limits<double>::infinity()
                                : std::numeric_limits<double>::infinity();

  auto score = [&](const PairSample& p) {
    const double d = metric(p.x, p.y);
    if (d <= kDegeneratePair) return worst;
    return ratio_of(eval(p.x), eval(p.y), d);
  };
  auto better = [&](double a, double b) { return maximize ? a > b : a < b; };

  AdversarialResult best{starts.front(), worst};
  for (const auto& start : starts) {
    PairSample current = start;
    double current_score = score(current);
    const double base_scale =
        std::max({current.x.data.norm(), current.y.data.norm(), 1e-6});
    for (double step = 0.5 * base_scale; step >= 1e-8; step *= 0.5) {
      bool improved = true;
      int sweeps = 0;
      while (improved && sweeps < 4) {
        improved = false;
        ++sweeps;
        for (int which = 0; which < 2; ++which) {
          Eigen::VectorXd& coords = which == 0 ? current.x.data : current.y.data;
          for (int k = 0; k < coords.size(); ++k) {
            for (double delta : {step, -step}) {
              coords[k] += delta;
              const double trial = score(current);
              if (better(trial, current_score)) {
                current_score = trial;
                improved = true;
              } else {
                coords[k] -= delta;
              }
            }
          }
        }
      }
    }
    if (better(current_score, best.ratio) ||
        (best.ratio == worst && current_score == worst)) {
      best = {current, current_score};
    }
  }
  return best;
}

AdversarialResult adversarial_search(const EmbeddingHandle& handle,
                                     const MetricOracle& oracle,
                                     SearchObjective objective, int restarts,
                                     std::uint64_t seed) {
  if (restarts < 1) throw BadArgument("adversarial_search needs restarts >= 1");
  const MixWeights mix{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const auto starts = sample_pairs(oracle.action(), restarts, mix, seed);
  PointMetric metric = [&oracle](const Point& a, const Point& b) {
    return oracle.distance(a, b);
  };
  return adversarial_search(handle.evaluate, metric, objective, starts);
}

// ---------------------------------------------------------------------------
// verify_claims

VerifyOutcome verify_claims(const EmbeddingHandle& handle, const MetricOracle& oracle,
                            const VerifyBudget& budget, std::uint64_t seed,
                            const EstimateOptions& options) {
  VerifyOutcome out;
  const MixWeights mix{0.5, 0.25, 0.25};
  const auto pairs = sample_pairs(oracle.action(), budget.pairs, mix, seed);
  out.report = estimate_distortion(handle, oracle, pairs, options);
  out.report.seed = seed;

  const auto lo = adversarial_search(handle, oracle, SearchObjective::MinimizeRatio,
                                     budget.restarts, seed + 1);
  const auto hi = adversarial_search(handle, oracle, SearchObjective::MaximizeRatio,
                                     budget.restarts, seed + 2);
  // adversarial witnesses are admissible samples: fold them into the report
  DistortionReport advr;
  advr.n_pairs = 2;
  if (std::isfinite(lo.ratio)) advr.witness_min = WitnessPair{lo.pair.x, lo.pair.y, lo.ratio};
  if (std::isfinite(hi.ratio)) advr.witness_max = WitnessPair{hi.pair.x, hi.pair.y, hi.ratio};
  out.report = DistortionReport::merge(out.report, advr);
  out.adversarial_kappa =
      (std::isfinite(lo.ratio) && lo.ratio > 0.0 && std::isfinite(hi.ratio))
          ? hi.ratio / lo.ratio
          : std::numeric_limits<double>::infinity();

  for (const auto& v : out.report.violations) {
    if (v.side == "collapse") {
      out.failures.push_back("collapse violation");
      continue;
    }
    const double reference = v.claimed_bound * v.quotient_distance;
    const double excess = std::abs(v.embedded_distance - reference);
    if (excess > 1e-6 * std::max(reference, 1e-30)) {
      out.failures.push_back("bound violation beyond 1e-6 relative on side " + v.side);
    }
  }
  if (handle.kappa_claim.kind == KappaClaim::Kind::Exact) {
    if (!(out.adversarial_kappa >= 0.99 * handle.kappa_claim.lo)) {
      out.failures.push_back("adversarial kappa misses 99% of the exact claim");
    }
    if (!(out.adversarial_kappa <= handle.kappa_claim.hi * (1.0 + 1e-6))) {
      out.failures.push_back("adversarial kappa exceeds the exact claim");
    }
  } else if (handle.kappa_claim.kind == KappaClaim::Kind::Interval) {
    if (!(out.adversarial_kappa <= handle.kappa_claim.hi * (1.0 + 1e-6))) {
      out.failures.push_back("adversarial kappa exceeds the claimed interval");
    }
  }
  out.pass = out.failures.empty();
  return out;
}

// ---------------------------------------------------------------------------
// reference table

const std::vector<ReferenceEntry>& reference_table() {
  static const std::vector<ReferenceEntry> table = [] {
    const double r2 = std::sqrt(2.0);
    auto cyc = [](int r) { return r * std::sin(kPi / (2.0 * r)); };
    std::vector<ReferenceEntry> t;
    t.push_back({"O(1)", true, "sqrt(2)", r2, r2, "sign quotient of a real space"});
    t.push_back({"U(1)", true, "sqrt(2)", r2, r2, "phase quotient of a complex space"});
    t.push_back({"C_2", true, "2*sin(pi/4)", cyc(2), cyc(2), "scalar cyclic mixture"});
    t.push_back({"C_3", true, "3*sin(pi/6)", cyc(3), cyc(3), "scalar cyclic mixture"});
    t.push_back({"C_4", true, "4*sin(pi/8)", cyc(4), cyc(4), "scalar cyclic mixture"});
    t.push_back({"C_8", true, "8*sin(pi/16)", cyc(8), cyc(8), "scalar cyclic mixture"});
    t.push_back({"reflection", true, "1", 1.0, 1.0, "chamber fold is isometric"});
    t.push_back({"rect-lattice", true, "pi/2", kPi / 2, kPi / 2,
                 "product of circles, circle constant"});
    t.push_back({"hex-lattice", true, "sqrt(8)*pi/sqrt(27)",
                 std::sqrt(8.0) * kPi / std::sqrt(27.0),
                 std::sqrt(8.0) * kPi / std::sqrt(27.0),
                 "planar lattice optimization"});
    t.push_back({"E8-lattice", true, "sqrt(15)*pi/sqrt(32)",
                 std::sqrt(15.0) * kPi / std::sqrt(32.0),
                 std::sqrt(15.0) * kPi / std::sqrt(32.0),
                 "root lattice optimization"});
    t.push_back({"polar", true, "1", 1.0, 1.0, "section reduction to a reflection group"});
    t.push_back({"O(r)", true, "sqrt(2)", r2, r2, "Gram square root, n >= 2"});
    t.push_back({"U(r)", true, "sqrt(2)", r2, r2, "complex Gram square root, n >= 2"});
    t.push_back({"SO(r)", false, "[sqrt(2), 2*sqrt(2)]", r2, 2.0 * r2,
                 "Gram square root with the scaled Plucker invariant"});
    t.push_back({"alternating", false, "[sqrt(2), 2]", r2, 2.0,
                 "Weyl chamber gluing, nontrivial rotation subgroup"});
    t.push_back({"alternating-I2(3)", false, "[3*sin(pi/6), 2]", cyc(3), 2.0,
                 "dihedral rotation subgroup"});
    t.push_back({"alternating-I2(4)", false, "[4*sin(pi/8), 2]", cyc(4), 2.0,
                 "dihedral rotation subgroup"});
    t.push_back({"alternating-I2(6)", false, "[6*sin(pi/12), 2]", cyc(6), 2.0,
                 "dihedral rotation subgroup"});
    t.push_back({"**", true, "pi/2", kPi / 2, kPi / 2, "flat cylinder"});
    t.push_back({"2*22", true, "sqrt(2)", r2, r2, "rectangle modulo a half turn"});
    t.push_back({"4*2", true, "2*sqrt(2-sqrt(2))", 2.0 * std::sqrt(2.0 - r2),
                 2.0 * std::sqrt(2.0 - r2), "square modulo a quarter turn"});
    t.push_back({"xx", false, "[pi/2, pi/sqrt(2)]", kPi / 2, kPi / r2,
                 "flat Klein bottle via the order-2 pipeline"});
    t.push_back({"E(r) n>=3", true, "sqrt(2)", r2, r2, "centered Gram square root"});
    t.push_back({"E(r) n=2", true, "1", 1.0, 1.0, "centered pair reduces to a ray"});
    t.push_back({"contortion-1", true, "1", 1.0, 1.0, "trivial group"});
    t.push_back({"contortion-2", true, "sqrt(2)", r2, r2, "sign representation"});
    t.push_back({"contortion-3", true, "3/2", 1.5, 1.5, "planar rotation representation"});
    t.push_back({"contortion-C4", false, "[2*sqrt(2-sqrt(2)), 2]",
                 2.0 * std::sqrt(2.0 - r2), 2.0, "quarter turn bound and series bound"});
    t.push_back({"contortion-C2xC2", false, "[sqrt(2), 2]", r2, 2.0,
                 "order-2 subgroup bounds composed"});
    t.push_back({"contortion-2a3b", false, "sqrt(2)^a*(3/2)^b <= sqrt(|G|)", 0.0, 0.0,
                 "commentary bound via solvable series; not computed"});
    return t;
  }();
  return table;
}

const ReferenceEntry& reference_lookup(const std::string& label) {
  for (const auto& e : reference_table()) {
    if (e.label == label) return e;
  }
  throw BadArgument("no reference entry labeled '" + label + "'");
}

}  // namespace orbitlab
