#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "floq/ed.hpp"

namespace {

using namespace floq;

const double kV = std::sqrt(12.0);

void BM_FloquetApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ed::FloquetOperator u(ed::build_sector_basis(n, n / 2), kV, std::numbers::pi / 2,
                              lattice::Boundary::Open);
  Eigen::VectorXcd x = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(u.dim())).normalized();
  for (auto _ : state) {
    x = u.apply(x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(u.dim()));
}
BENCHMARK(BM_FloquetApply)->Arg(12)->Arg(16)->Arg(20);

void BM_Quasispectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ed::FloquetOperator u(ed::build_sector_basis(n, n / 2), kV, std::numbers::pi / 2,
                              lattice::Boundary::Open);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ed::quasispectrum(u));
  }
}
BENCHMARK(BM_Quasispectrum)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CoeSample(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ed::sample_coe_phases(dim, seed++));
  }
}
BENCHMARK(BM_CoeSample)->Arg(128)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_CoeSampleDense(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ed::sample_coe_phases_dense(dim, seed++));
  }
}
BENCHMARK(BM_CoeSampleDense)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
