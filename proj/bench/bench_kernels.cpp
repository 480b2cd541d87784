// Timings for the hot kernels: Hilbert symbols, invariants of dense Gram
// matrices, the edge search between type-1 components and the finite-field
// oracle, each parallel kernel next to its serial reference.

#include "isoq/finite_field.hpp"
#include "isoq/globdec.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace isoq;

namespace {

void BM_Hilbert(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  std::vector<std::pair<Rat, Rat>> pairs;
  for (int i = 0; i < 64; ++i) {
    Rat a(num(rng) | 1, den(rng)), b(num(rng) | 1, den(rng));
    a.canonicalize();
    b.canonicalize();
    pairs.emplace_back(a, b);
  }
  const Place two = Place::finite(2), seven = Place::finite(7);
  for (auto _ : state)
    for (auto& [a, b] : pairs) {
      benchmark::DoNotOptimize(hilbert(a, b, two));
      benchmark::DoNotOptimize(hilbert(a, b, seven));
    }
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_Hilbert);

void BM_Invariants(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> entry(-50, 50);
  Matrix g(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) g(i, j) = g(j, i) = entry(rng);
  } while (g.det() == 0);
  for (auto _ : state) benchmark::DoNotOptimize(invariants(g));
}
BENCHMARK(BM_Invariants)->DenseRange(2, 6, 2);

// Quadratics X^2 - sX + 1 whose first common non-split place lies above 30.
const Poly kFirst{1, -335, 1};
const Poly kSecond{1, -338, 1};

void BM_PairPlaceParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_pair_place(kFirst, kSecond, state.range(0)));
}
BENCHMARK(BM_PairPlaceParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_PairPlaceSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_pair_place_serial(kFirst, kSecond, state.range(0)));
}
BENCHMARK(BM_PairPlaceSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_OracleParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ff::oracle(state.range(0), 3, true));
}
BENCHMARK(BM_OracleParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_OracleSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ff::oracle(state.range(0), 3, false));
}
BENCHMARK(BM_OracleSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
