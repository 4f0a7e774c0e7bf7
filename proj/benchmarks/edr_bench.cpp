#include "edr/adequacy.hpp"
#include "edr/engine.hpp"
#include "edr/matrix.hpp"
#include "edr/rings.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace edr;

namespace {

RingMatrix random_matrix(const RingHandle& R, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-50, 50);
  std::vector<Element> e;
  for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(R->from_int(d(rng)));
  return RingMatrix(R, rows, cols, std::move(e));
}

void BM_DiagonalReduceZ(benchmark::State& state) {
  auto Z = make_ring("Z");
  std::mt19937_64 rng(1);
  auto n = static_cast<std::size_t>(state.range(0));
  auto A = random_matrix(Z, n, n + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(diagonal_reduce(A));
}
BENCHMARK(BM_DiagonalReduceZ)->Arg(2)->Arg(3)->Arg(5)->Arg(8);

void BM_DiagonalReduceResidue(benchmark::State& state) {
  auto R = make_ring("Zn:60");
  EngineCache::build(R);
  std::mt19937_64 rng(2);
  auto A = random_matrix(R, 3, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(diagonal_reduce(A));
}
BENCHMARK(BM_DiagonalReduceResidue);

void BM_EngineBuild(benchmark::State& state) {
  auto spec = "Zn:" + std::to_string(state.range(0));
  for (auto _ : state) {
    // Fresh handle each round so the cache cannot short-circuit.
    auto R = make_ring(spec);
    benchmark::DoNotOptimize(EngineCache::build(R));
  }
}
BENCHMARK(BM_EngineBuild)->Arg(12)->Arg(60)->Arg(128);

void BM_AdequateFactorZ(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(1, 2000), a(0, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(adequate_factor_Z(c(rng), a(rng)));
}
BENCHMARK(BM_AdequateFactorZ);

}  // namespace

BENCHMARK_MAIN();
