#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "orbitlab/group_actions.hpp"
#include "orbitlab/quotient_metrics.hpp"
#include "orbitlab/rng.hpp"

using namespace orbitlab;

namespace {

Eigen::MatrixXd random_mat(int r, int n, SplitRng& rng) {
  Eigen::MatrixXd m(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  return m;
}

}  // namespace

static void BM_DistOrthogonal(benchmark::State& state) {
  SplitRng rng(1);
  const int r = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Eigen::MatrixXd x = random_mat(r, n, rng);
  const Eigen::MatrixXd y = random_mat(r, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_orthogonal(x, y));
  }
}
BENCHMARK(BM_DistOrthogonal)->Args({2, 4})->Args({3, 8})->Args({4, 16});

static void BM_DistSpecialOrthogonal(benchmark::State& state) {
  SplitRng rng(2);
  const int r = static_cast<int>(state.range(0));
  const Eigen::MatrixXd x = random_mat(r, 2 * r, rng);
  const Eigen::MatrixXd y = random_mat(r, 2 * r, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_special_orthogonal(x, y));
  }
}
BENCHMARK(BM_DistSpecialOrthogonal)->Arg(2)->Arg(3)->Arg(4);

static void BM_DistWallpaper(benchmark::State& state) {
  const Wallpaper w{WallpaperSignature::FourStar2, 1.0, 1.0};
  SplitRng rng(3);
  const Eigen::Vector2d x(rng.gaussian(), rng.gaussian());
  const Eigen::Vector2d y(rng.gaussian(), rng.gaussian());
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_wallpaper(w, x, y));
  }
}
BENCHMARK(BM_DistWallpaper);

static void BM_Wasserstein(benchmark::State& state) {
  SplitRng rng(4);
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd x = random_mat(3, n, rng);
  const Eigen::MatrixXd y = random_mat(3, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_permutation_wasserstein(x, y));
  }
}
BENCHMARK(BM_Wasserstein)->Arg(8)->Arg(32)->Arg(128);

static void BM_BruteForceDihedral(benchmark::State& state) {
  GroupActionSpec spec(
      ReflectionGroup{ReflectionFamily::I2, static_cast<int>(state.range(0))});
  const MetricOracle oracle(spec, MetricStrategy::BruteForceFinite);
  SplitRng rng(5);
  const Point x = random_point(spec, 1.0, rng);
  const Point y = random_point(spec, 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.distance(x, y));
  }
}
BENCHMARK(BM_BruteForceDihedral)->Arg(4)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
