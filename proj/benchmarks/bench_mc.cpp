#include <benchmark/benchmark.h>

#include "ostmix/monte_carlo.hpp"

using namespace ostmix;

namespace {

void BM_SampleSst(benchmark::State& state) {
  GroupParams params(1, static_cast<std::uint32_t>(state.range(0)));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Rng rng = make_trial_rng(9001, trial++);
    auto t = sample_sst(params, rng, 1 << 22);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_SampleSst)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_SimulateChain(benchmark::State& state) {
  // A 52-card deck with 4 orientations, one full coupon-collection horizon.
  GroupParams params(4, 52);
  const int steps = static_cast<int>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Rng rng = make_trial_rng(9002, trial++);
    auto chain = simulate_chain(params, steps, rng);
    benchmark::DoNotOptimize(chain);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_SimulateChain)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_EmpiricalLaw(benchmark::State& state) {
  GroupParams params(2, 3);
  for (auto _ : state) {
    auto law = empirical_law(params, 10, static_cast<std::uint64_t>(state.range(0)), 9003);
    benchmark::DoNotOptimize(law);
  }
}
BENCHMARK(BM_EmpiricalLaw)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SstTailRow(benchmark::State& state) {
  GroupParams params(1, 200);
  for (auto _ : state) {
    auto row = sst_tail(params, 2.0, static_cast<std::uint64_t>(state.range(0)), 9004);
    benchmark::DoNotOptimize(row);
  }
}
BENCHMARK(BM_SstTailRow)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
