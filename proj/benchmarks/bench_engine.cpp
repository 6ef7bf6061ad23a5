#include <memory>
#include <numeric>

#include <benchmark/benchmark.h>

#include "condmon/constructions.hpp"
#include "condmon/factor.hpp"
#include "condmon/zerosum.hpp"

using namespace condmon;

static void BM_FactorizationsDeepHole(benchmark::State& state) {
  const auto h = deep_hole_monoid(2, 1);
  const auto a = h.make({state.range(0), state.range(0)});
  for (auto _ : state) {
    auto set = factorizations(h, a);
    benchmark::DoNotOptimize(set.size());
  }
  state.counters["Z"] = static_cast<double>(factorizations(h, a).size());
}
BENCHMARK(BM_FactorizationsDeepHole)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FactorizationsCycle(benchmark::State& state) {
  const auto h = cycle_monoid(state.range(0));
  const auto a = h.make(cycle_all_ones(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(factorizations(h, a).size());
}
BENCHMARK(BM_FactorizationsCycle)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_NaiveFactorizations(benchmark::State& state) {
  const auto h = deep_hole_monoid(2, 1);
  const auto lattice = std::make_shared<const ElementLattice>(h, h.make({state.range(0), state.range(0)}));
  for (auto _ : state) benchmark::DoNotOptimize(naive_factorizations(lattice, lattice->top_id()).size());
}
BENCHMARK(BM_NaiveFactorizations)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// Catenary degree of Z(a) by the three bottleneck strategies.
template <int (*Bottleneck)(const FactorizationSet&, std::span<const std::uint32_t>)>
static void BM_Bottleneck(benchmark::State& state) {
  const auto h = deep_hole_monoid(2, 1);
  const auto set = factorizations(h, h.make({state.range(0), state.range(0)}));
  std::vector<std::uint32_t> all(set.size());
  std::iota(all.begin(), all.end(), 0U);
  for (auto _ : state) benchmark::DoNotOptimize(Bottleneck(set, all));
}
static int threshold(const FactorizationSet& set, std::span<const std::uint32_t> subset) {
  return bottleneck_threshold(set, subset);
}
BENCHMARK(BM_Bottleneck<bottleneck_prim>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bottleneck<bottleneck_kruskal>)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bottleneck<threshold>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_CertifyWindow(benchmark::State& state) {
  const auto h = IdealExtensionMonoid(2, {ExponentVector{2, 1}, ExponentVector{1, 3}});
  const auto side = state.range(0);
  for (auto _ : state) {
    const ElementLattice lattice(h, h.make({side, side}));
    benchmark::DoNotOptimize(certify_window(lattice).lengths.size());
  }
}
BENCHMARK(BM_CertifyWindow)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Davenport(benchmark::State& state) {
  const auto ctx = ZeroSumContext::full(FiniteAbelianGroup({state.range(0)}));
  for (auto _ : state) benchmark::DoNotOptimize(davenport(ctx));
}
BENCHMARK(BM_Davenport)->DenseRange(4, 8, 2);

static void BM_DavenportByEnumeration(benchmark::State& state) {
  const auto ctx = ZeroSumContext::full(FiniteAbelianGroup({state.range(0)}));
  for (auto _ : state) benchmark::DoNotOptimize(davenport_by_enumeration(ctx));
}
BENCHMARK(BM_DavenportByEnumeration)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_GlobalAtoms(benchmark::State& state) {
  const auto ctx = ZeroSumContext::full(FiniteAbelianGroup({state.range(0)}));
  for (auto _ : state) benchmark::DoNotOptimize(global_atoms_F_iota(ctx).size());
}
BENCHMARK(BM_GlobalAtoms)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
