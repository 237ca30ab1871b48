#include <benchmark/benchmark.h>

#include <random>

#include "ostmix/group.hpp"

using namespace ostmix;

namespace {

GroupElement random_element(const GroupParams& params, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, *group_order(params) - 1);
  return unrank(GroupIndex{pick(rng)}, params);
}

void BM_Compose(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(1);
  auto a = random_element(params, rng);
  auto b = random_element(params, rng);
  for (auto _ : state) {
    auto c = compose(a, b);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Compose)->Arg(4)->Arg(6)->Arg(8);

void BM_Inverse(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(2);
  auto a = random_element(params, rng);
  for (auto _ : state) {
    auto b = inverse(a);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_Inverse)->Arg(4)->Arg(8);

void BM_Rank(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  std::mt19937_64 rng(3);
  auto a = random_element(params, rng);
  for (auto _ : state) {
    auto r = rank(a);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Rank)->Arg(4)->Arg(8);

void BM_Unrank(benchmark::State& state) {
  GroupParams params(2, static_cast<std::uint32_t>(state.range(0)));
  const std::uint64_t order = *group_order(params);
  std::uint64_t r = order / 3;
  for (auto _ : state) {
    auto g = unrank(GroupIndex{r}, params);
    benchmark::DoNotOptimize(g);
    r = (r + 1) % order;
  }
}
BENCHMARK(BM_Unrank)->Arg(4)->Arg(8);

}  // namespace
