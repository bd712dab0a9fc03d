#include <benchmark/benchmark.h>

#include "chebknot/chebyshev.hpp"
#include "chebknot/intpoly.hpp"

namespace {

void BM_ChebT(benchmark::State& state) {
  for (auto _ : state) {
    chebknot::IntPolynomial p = chebknot::cheb_T(
        static_cast<unsigned long>(state.range(0)));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ChebT)->Arg(64)->Arg(256);

void BM_MinimalCosPoly(benchmark::State& state) {
  for (auto _ : state) {
    chebknot::minpoly_memo_clear();
    chebknot::IntPolynomial p = chebknot::minimal_cos_poly(
        static_cast<unsigned long>(state.range(0)));
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_MinimalCosPoly)->Arg(105)->Arg(256)->Arg(385);

void BM_PolyMul(benchmark::State& state) {
  chebknot::IntPolynomial a = chebknot::cheb_T(
      static_cast<unsigned long>(state.range(0)));
  chebknot::IntPolynomial b = chebknot::cheb_V(
      static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) {
    chebknot::IntPolynomial p = a * b;
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PolyMul)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
