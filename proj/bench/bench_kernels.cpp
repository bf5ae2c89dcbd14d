#include "sll/kernels.hpp"
#include "sll/resistance.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

sll::Matrix random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  sll::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m * m.transpose();
}

sll::Matrix cycle_laplacian(int n) {
  sll::Matrix l = sll::Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) l((i + 1) % n, i) = -1.0;
  return l;
}

template <bool Parallel>
void BM_PairwiseResistance(benchmark::State& state) {
  const sll::Matrix s = random_symmetric(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    if constexpr (Parallel) benchmark::DoNotOptimize(sll::kernels::pairwise_resistance(s));
    else benchmark::DoNotOptimize(sll::kernels::serial::pairwise_resistance(s));
  }
}

template <bool Parallel>
void BM_TriangleViolations(benchmark::State& state) {
  const sll::Matrix s = random_symmetric(static_cast<int>(state.range(0)), 2);
  const sll::Matrix r = sll::resistance_matrix(s);
  for (auto _ : state) {
    if constexpr (Parallel) benchmark::DoNotOptimize(sll::kernels::triangle_violations(r, 1e-9));
    else benchmark::DoNotOptimize(sll::kernels::serial::triangle_violations(r, 1e-9));
  }
}

template <bool Parallel>
void BM_KroneckerSum(benchmark::State& state) {
  const sll::Matrix a = random_symmetric(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    if constexpr (Parallel) benchmark::DoNotOptimize(sll::kernels::kronecker_sum(a));
    else benchmark::DoNotOptimize(sll::kernels::serial::kronecker_sum(a));
  }
}

template <bool Parallel>
void BM_PositiveOnGrid(benchmark::State& state) {
  const sll::Matrix l = cycle_laplacian(static_cast<int>(state.range(0)));
  std::vector<double> grid;
  for (int e = -3; e <= 7; ++e) grid.push_back(std::ldexp(1.0, e));
  for (auto _ : state) {
    if constexpr (Parallel) benchmark::DoNotOptimize(sll::kernels::positive_on_grid(l, grid));
    else benchmark::DoNotOptimize(sll::kernels::serial::positive_on_grid(l, grid));
  }
}

}  // namespace

BENCHMARK(BM_PairwiseResistance<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_PairwiseResistance<true>)->Arg(64)->Arg(256);
BENCHMARK(BM_TriangleViolations<false>)->Arg(32)->Arg(128);
BENCHMARK(BM_TriangleViolations<true>)->Arg(32)->Arg(128);
BENCHMARK(BM_KroneckerSum<false>)->Arg(16)->Arg(48);
BENCHMARK(BM_KroneckerSum<true>)->Arg(16)->Arg(48);
BENCHMARK(BM_PositiveOnGrid<false>)->Arg(8)->Arg(32);
BENCHMARK(BM_PositiveOnGrid<true>)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
