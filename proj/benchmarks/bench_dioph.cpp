#include <benchmark/benchmark.h>

#include "floq/dioph.hpp"

namespace {

void BM_HubbardParams(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(floq::dioph::hubbard_params({3, 1, 1}));
  }
}
BENCHMARK(BM_HubbardParams);

void BM_Dmax4Certificate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(floq::dioph::dmax4_certificate(3, 9471));
  }
}
BENCHMARK(BM_Dmax4Certificate);

void BM_Dmax4Search(benchmark::State& state) {
  const floq::Int w2_max = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(floq::dioph::search_dmax4(10, w2_max));
  }
  state.SetItemsProcessed(state.iterations() * 10 * state.range(0));
}
BENCHMARK(BM_Dmax4Search)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
