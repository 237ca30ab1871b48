#include <benchmark/benchmark.h>

#include "ostmix/exact.hpp"

using namespace ostmix;

namespace {

void BM_PlanBuild(benchmark::State& state) {
  GroupParams params(static_cast<std::uint32_t>(state.range(0)),
                     static_cast<std::uint32_t>(state.range(1)));
  auto gens = ost_generators(params);
  for (auto _ : state) {
    ConvolutionPlan plan(gens);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_PlanBuild)->Args({2, 4})->Args({3, 3})->Args({2, 5})->Args({1, 7});

void BM_ConvolveStep(benchmark::State& state) {
  GroupParams params(static_cast<std::uint32_t>(state.range(0)),
                     static_cast<std::uint32_t>(state.range(1)));
  ConvolutionPlan plan(ost_generators(params));
  DenseDistribution p = delta_at_identity(params);
  for (auto _ : state) {
    p = plan.apply(p);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_ConvolveStep)
    ->Args({2, 4})
    ->Args({3, 3})
    ->Args({2, 5})
    ->Args({1, 7})
    ->Args({2, 6})
    ->Unit(benchmark::kMicrosecond);

void BM_TvDistance(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  auto p = power(params, ost_generators(params), 5);
  auto u = uniform(params);
  for (auto _ : state) {
    double d = tv_distance(p, u);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_TvDistance)->Arg(5)->Arg(6);

void BM_Pushforward(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  auto p = power(params, ost_generators(params), 5);
  for (auto _ : state) {
    auto down = pushforward_projection(p);
    benchmark::DoNotOptimize(down);
  }
}
BENCHMARK(BM_Pushforward)->Arg(5)->Arg(6);

void BM_DistanceCurve(benchmark::State& state) {
  GroupParams params(2, 4);
  for (auto _ : state) {
    auto curve = distance_curve(params, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_DistanceCurve)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace
