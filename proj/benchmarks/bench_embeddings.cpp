#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "orbitlab/combinators.hpp"
#include "orbitlab/embeddings.hpp"
#include "orbitlab/rng.hpp"

using namespace orbitlab;

static void BM_ScalarCyclic(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  SplitRng rng(11);
  Eigen::VectorXcd u(n);
  for (int i = 0; i < n; ++i) u[i] = std::complex<double>(rng.gaussian(), rng.gaussian());
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_scalar_cyclic(r, u));
  }
}
BENCHMARK(BM_ScalarCyclic)->Args({2, 1})->Args({4, 3})->Args({8, 3});

static void BM_SpecialOrthogonalEmbed(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  SplitRng rng(12);
  Eigen::MatrixXd x(r, n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed_special_orthogonal(x));
  }
}
BENCHMARK(BM_SpecialOrthogonalEmbed)->Args({2, 4})->Args({3, 6})->Args({4, 8});

static void BM_WallpaperEmbed(benchmark::State& state) {
  const auto handle = make_wallpaper_handle({WallpaperSignature::XX, 1.0, 1.0});
  const Point p = Point::plane(0.31, 0.77);
  for (auto _ : state) {
    benchmark::DoNotOptimize(handle.evaluate(p));
  }
}
BENCHMARK(BM_WallpaperEmbed);

static void BM_ChamberFold(benchmark::State& state) {
  const ReflectionData refl(ReflectionFamily::B, static_cast<int>(state.range(0)));
  SplitRng rng(13);
  Eigen::VectorXd x(refl.dim());
  for (int i = 0; i < x.size(); ++i) x[i] = rng.gaussian();
  for (auto _ : state) {
    benchmark::DoNotOptimize(refl.fold(x));
  }
}
BENCHMARK(BM_ChamberFold)->Arg(3)->Arg(6)->Arg(12);

static void BM_MaxFilterPairingPermutations(benchmark::State& state) {
  GroupActionSpec spec(PermuteColumns{3, static_cast<int>(state.range(0))});
  SplitRng rng(14);
  const Point x = random_point(spec, 1.0, rng);
  const Point y = random_point(spec, 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_filter_pairing(spec, x, y));
  }
}
BENCHMARK(BM_MaxFilterPairingPermutations)->Arg(4)->Arg(12)->Arg(32);
