#include <benchmark/benchmark.h>

#include "idalkit/fpmod.hpp"

using namespace idalkit;

static void BM_KernelOfRow(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x", "y", "z"});
  std::vector<Column> cols;
  const char* entries[] = {"x", "y", "z", "x*y", "y*z", "z*x"};
  for (long i = 0; i < state.range(0); ++i) cols.push_back(Column{r->parse(entries[i])});
  ModuleMap f{free_module(r, cols.size()), free_module(r, 1), cols};
  for (auto _ : state) benchmark::DoNotOptimize(kernel(f));
}
BENCHMARK(BM_KernelOfRow)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

static void BM_HomModule(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x", "y"});
  PresentedModule m(r, 2, {{r->parse("x"), r->parse("y")}, {r->parse("y^2"), r->parse("0")}});
  PresentedModule n(r, 2, {{r->parse("x^2"), r->parse("x*y")}});
  for (auto _ : state) benchmark::DoNotOptimize(HomModule(m, n));
}
BENCHMARK(BM_HomModule)->Unit(benchmark::kMicrosecond);

static void BM_Tensor(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x", "y"});
  PresentedModule m(r, 2, {{r->parse("x"), r->parse("y")}});
  for (auto _ : state) benchmark::DoNotOptimize(simplify(tensor(m, tensor(m, m))));
}
BENCHMARK(BM_Tensor)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
