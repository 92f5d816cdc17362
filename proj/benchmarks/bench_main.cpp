#include <benchmark/benchmark.h>

#include "harmonic/harmonic.hpp"

using namespace harmonic;

static void BM_Hyp2f1(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0)) / 100.0;
  const Complex z = std::polar(radius, 2.1);
  for (auto _ : state) benchmark::DoNotOptimize(hyp2f1(0.75, 1.25, 2.5, z));
}
BENCHMARK(BM_Hyp2f1)->Arg(30)->Arg(60)->Arg(90)->Arg(99);

static void BM_Evaluate(benchmark::State& state) {
  const auto f = make_extremal({{0.5, 0.4, 1}, 1.0});
  const Complex z(0.3, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, z));
}
BENCHMARK(BM_Evaluate);

static void BM_CollisionSearch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_symmetric_collision({1.25, std::nullopt, 1e-10}));
}
BENCHMARK(BM_CollisionSearch)->Unit(benchmark::kMillisecond);

static void BM_UnivalenceScan(benchmark::State& state) {
  const auto f = make_bshouty_lyzzaik(0.40);
  ScanOptions o;
  o.cells = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(univalence_scan(f, o));
}
BENCHMARK(BM_UnivalenceScan)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Area(benchmark::State& state) {
  const auto f = make_extremal({{0.25, 0.3, 2}, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(area(f, 0.9));
}
BENCHMARK(BM_Area)->Unit(benchmark::kMillisecond);

static void BM_GrowthClosedForm(benchmark::State& state) {
  const ClassParams p{0.25, 0.3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(growth_bounds(0.7, p, GrowthMode::kClosedForm));
}
BENCHMARK(BM_GrowthClosedForm);

BENCHMARK_MAIN();
