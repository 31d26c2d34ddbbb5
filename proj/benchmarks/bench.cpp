#include <benchmark/benchmark.h>

#include "powersieve/charsum.hpp"
#include "powersieve/geometry.hpp"
#include "powersieve/multipoly.hpp"

using namespace powersieve;

static void BM_CompiledEval(benchmark::State& state) {
  MultiPoly f = MultiPoly::parse("x1^3+x2^3+x3^3", 3);
  CompiledPolyModP cf(f.reduced_mod(101), 101);
  std::vector<uint64_t> x{17, 42, 99};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cf.eval(x));
    x[0] = (x[0] + 1) % 101;
  }
}
BENCHMARK(BM_CompiledEval);

static void BM_CharacterValue(benchmark::State& state) {
  PowerCharacter chi(65537, 4);
  long long n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi(n));
    n = n % 65535 + 1;
  }
}
BENCHMARK(BM_CharacterValue);

static void BM_CompleteSum(benchmark::State& state) {
  MultiPoly h = MultiPoly::parse("x1^2+x2^2", 2);
  MultiPoly g = MultiPoly::parse("x1^3+x2^3", 2);
  std::vector<uint64_t> v{1, 2};
  uint64_t p = uint64_t(state.range(0));
  for (auto _ : state) {
    Budget budget(10'000'000);
    benchmark::DoNotOptimize(mixed_complete_sum(p, h, g, 1, 1, v, budget));
  }
}
BENCHMARK(BM_CompleteSum)->Arg(11)->Arg(101);

static void BM_SingularLocus(benchmark::State& state) {
  MultiPoly F = MultiPoly::parse("x1^3+x2^3+x3^3", 3);
  for (auto _ : state) {
    Budget budget(100'000'000);
    benchmark::DoNotOptimize(singular_locus_dim(F, 7, 2, budget));
  }
}
BENCHMARK(BM_SingularLocus);

BENCHMARK_MAIN();
