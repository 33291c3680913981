#include <benchmark/benchmark.h>

#include "idalkit/ring.hpp"

using namespace idalkit;

static void BM_Cyclic(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"a", "b", "c", "d"});
  std::vector<Poly> gens{r->parse("a+b+c+d"), r->parse("a*b+b*c+c*d+d*a"), r->parse("a*b*c+b*c*d+c*d*a+d*a*b"),
                         r->parse("a*b*c*d-1")};
  for (auto _ : state) benchmark::DoNotOptimize(r->groebner(gens));
}
BENCHMARK(BM_Cyclic)->Unit(benchmark::kMillisecond);

static void BM_Katsura(benchmark::State& state) {
  auto r = PolyRing::make(Field{32003}, {"x", "y", "z"});
  std::vector<Poly> gens{r->parse("x+2*y+2*z-1"), r->parse("x^2+2*y^2+2*z^2-x"), r->parse("2*x*y+2*y*z-y")};
  for (auto _ : state) benchmark::DoNotOptimize(r->groebner(gens));
}
BENCHMARK(BM_Katsura)->Unit(benchmark::kMicrosecond);

static void BM_PowersOfMaximalIdeal(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x", "y", "z"});
  Poly m = r->parse("x+y+z");
  std::vector<Poly> gens{r->pow(r->parse("x-y"), static_cast<unsigned>(state.range(0))), r->pow(m, 2),
                         r->parse("x*y*z-1")};
  for (auto _ : state) benchmark::DoNotOptimize(r->groebner(gens));
}
BENCHMARK(BM_PowersOfMaximalIdeal)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
