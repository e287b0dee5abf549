#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "floq/ca.hpp"
#include "floq/lattice.hpp"

namespace {

using namespace floq;

const pairdyn::DriveParams kDrive{std::sqrt(12.0), std::numbers::pi / 2};

void BM_ChainPeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = lattice::build_chain(n, lattice::Boundary::Open);
  const auto rules = ca::make_rule_table(m, kDrive);
  lattice::FockState s(n, false);
  for (int i = 0; i < n / 2; ++i) s.set(i, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ca::ca_period(s, rules, m));
  }
}
BENCHMARK(BM_ChainPeriod)->Arg(16)->Arg(256);

void BM_ChainDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = lattice::build_chain(n, lattice::Boundary::Open);
  const auto rules = ca::make_rule_table(m, kDrive);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ca::krylov_decompose(m, rules, {n / 2}));
  }
}
BENCHMARK(BM_ChainDecompose)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LiebPatchDecompose(benchmark::State& state) {
  const auto m = lattice::build_lieb(8, 8, lattice::Boundary::Periodic);
  const auto rules = ca::make_rule_table(m, kDrive);
  ca::DecomposeOptions opt;
  for (int s = 0; s < m.lattice.num_sites(); ++s) {
    const auto& c = m.lattice.coord(s);
    if (c[0] <= 10 && c[1] <= 10) opt.region.push_back(s);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ca::krylov_decompose(m, rules, {static_cast<int>(state.range(0))}, opt));
  }
}
BENCHMARK(BM_LiebPatchDecompose)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
