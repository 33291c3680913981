#include <benchmark/benchmark.h>

#include "idalkit/glued.hpp"
#include "idalkit/localize.hpp"

using namespace idalkit;

static void BM_ReflectPuncturedPlane(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x", "y"});
  auto j = idal_from_ideal({r->var(0), r->var(1)}, r);
  for (auto _ : state) benchmark::DoNotOptimize(reflect(j, unit_module(r), 8));
}
BENCHMARK(BM_ReflectPuncturedPlane)->Unit(benchmark::kMillisecond);

static void BM_ReflectTruncated(benchmark::State& state) {
  auto r = PolyRing::make(Field{}, {"x"});
  auto j = principal_idal(r, r->var(0));
  auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reflect(j, unit_module(r), n));
}
BENCHMARK(BM_ReflectTruncated)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void BM_DoubleOriginSections(benchmark::State& state) {
  auto g = structure_sheaf(double_origin(2));
  for (auto _ : state) benchmark::DoNotOptimize(global_sections(g, static_cast<long>(state.range(0))));
}
BENCHMARK(BM_DoubleOriginSections)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_P1Sections(benchmark::State& state) {
  auto g = p1_standard(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(global_sections(g, 12));
}
BENCHMARK(BM_P1Sections)->DenseRange(0, 10, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
