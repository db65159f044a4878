#include "dq/cech.hpp"
#include "dq/coordbundle.hpp"
#include "dq/cosimplicial.hpp"
#include "dq/families.hpp"
#include "dq/linfty.hpp"
#include "dq/polywindows.hpp"

#include <benchmark/benchmark.h>

using namespace dq;

static void BM_SparseRank(benchmark::State& state) {
  Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec v;
    for (int k = 0; k < 4; ++k) v[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(n) - 1))] += Rational(rand_int(rng, -3, 3));
    rows.push_back(v);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank_of(rows));
}
BENCHMARK(BM_SparseRank)->Arg(64)->Arg(256);

static void BM_SweepSl2(benchmark::State& state) {
  auto g = std::make_shared<const DGLieAlgebra>(lie_algebra(lie_sl2()));
  TowerPtr t = from_dgla(g, 4);
  const auto arity = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_linfty(*t, arity).words_checked);
}
BENCHMARK(BM_SweepSl2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_HkrReport(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hkr_quasi_iso_report(1, {-2, 2, 0, 0}, 0, 2).rows.size());
}
BENCHMARK(BM_HkrReport)->Unit(benchmark::kMillisecond);

static void BM_ThomSullivanCircle(benchmark::State& state) {
  CosimplicialComplex a = ordered_cech(abelian_cover(constant_cover(2, FiniteAlgebra::rationals())), 2);
  for (auto _ : state) benchmark::DoNotOptimize(thom_sullivan(a, 2).complex.space()->size());
}
BENCHMARK(BM_ThomSullivanCircle)->Unit(benchmark::kMillisecond);

static void BM_WittRelations(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_witt_relations(6, 12).checked);
}
BENCHMARK(BM_WittRelations)->Unit(benchmark::kMillisecond);

static void BM_McForm(benchmark::State& state) {
  CoordRing1 ring{12, 8, 24};
  for (auto _ : state) benchmark::DoNotOptimize(mc_form(ring).g.size());
}
BENCHMARK(BM_McForm)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
