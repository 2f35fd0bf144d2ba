#include <benchmark/benchmark.h>

#include "chatelet/hilbert.hpp"
#include "chatelet/ratpoly.hpp"

using namespace chatelet;

static void BM_Resultant(benchmark::State& state) {
  RatPoly f({Rat(Int("-878755181")), Rat(0), Rat(1)});
  RatPoly g({Rat(Int("-4393775906")), Rat(0), Rat(5)});
  RatPoly P = f * g;
  for (auto _ : state) benchmark::DoNotOptimize(resultant(P, P.derivative()));
}
BENCHMARK(BM_Resultant);

static void BM_HilbertSymbol(benchmark::State& state) {
  QPlace v = QPlace::prime(Int(13));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_symbol(Rat(377), Rat(14), v));
}
BENCHMARK(BM_HilbertSymbol);

static void BM_ConicOracle(benchmark::State& state) {
  QPlace v = QPlace::prime(Int(13));
  for (auto _ : state) benchmark::DoNotOptimize(conic_oracle(Rat(-15), Rat(26), v));
}
BENCHMARK(BM_ConicOracle);

BENCHMARK_MAIN();
