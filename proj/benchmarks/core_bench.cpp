#include <random>

#include <benchmark/benchmark.h>

#include "qlmor/network.hpp"
#include "qlmor/reduction.hpp"

using namespace qlmor;

namespace {

RealMatrix stable_matrix(Index d) {
  std::mt19937_64 rng(d);
  std::normal_distribution<double> N(0.0, 1.0);
  RealMatrix A(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) A(i, j) = N(rng);
  return A - (spectral_abscissa(A) + 1.0) * RealMatrix::Identity(d, d);
}

void BM_Lyapunov(benchmark::State& state) {
  const Index d = state.range(0);
  const RealMatrix A = stable_matrix(d);
  const RealMatrix W = RealMatrix::Identity(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(A, W));
}
BENCHMARK(BM_Lyapunov)->Arg(4)->Arg(10)->Arg(20)->Arg(40);

void BM_Williamson(benchmark::State& state) {
  const Index n = state.range(0);
  const RealMatrix M = stable_matrix(2 * n);
  const RealMatrix P = symmetrize(M * M.transpose() + RealMatrix::Identity(2 * n, 2 * n));
  for (auto _ : state) benchmark::DoNotOptimize(williamson(P));
}
BENCHMARK(BM_Williamson)->Arg(2)->Arg(5)->Arg(10);

void BM_HinfNetwork(benchmark::State& state) {
  const QuadratureModel G = build_network({});
  for (auto _ : state) benchmark::DoNotOptimize(hinf_norm(G));
}
BENCHMARK(BM_HinfNetwork);

void BM_ReduceNetwork(benchmark::State& state) {
  const QuadratureModel G = build_network({static_cast<Index>(state.range(0)), 12e6, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(reduce(G, 3));
}
BENCHMARK(BM_ReduceNetwork)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
