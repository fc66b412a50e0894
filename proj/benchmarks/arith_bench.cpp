#include <benchmark/benchmark.h>

#include "vsf/arith.hpp"
#include "vsf/theta.hpp"

namespace {

void BM_DivisorSieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto table = vsf::arith::divisorSieve(limit);
    benchmark::DoNotOptimize(table[limit]);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DivisorSieve)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

void BM_DivisorSieveThreads(benchmark::State& state) {
  for (auto _ : state) {
    auto table = vsf::arith::DivisorTable::build(10'000'000, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(table[1]);
  }
}
BENCHMARK(BM_DivisorSieveThreads)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_DivisorSummatory(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vsf::arith::divisorSummatory(x));
}
BENCHMARK(BM_DivisorSummatory)->RangeMultiplier(100)->Range(100, 100'000'000'000'000);

void BM_ThetaDirect(benchmark::State& state) {
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vsf::theta::thetaDirect(t, 1e-12));
}
BENCHMARK(BM_ThetaDirect)->Arg(1)->Arg(10)->Arg(100);

void BM_ThetaWigert(benchmark::State& state) {
  const double t = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vsf::theta::thetaWigert(t, 1e-12));
}
BENCHMARK(BM_ThetaWigert)->Arg(1)->Arg(10)->Arg(100);

}  // namespace
