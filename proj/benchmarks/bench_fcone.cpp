#include <benchmark/benchmark.h>

#include <random>

#include "fcone/boundarycert.hpp"
#include "fcone/fnef.hpp"
#include "fcone/lift.hpp"
#include "fcone/ratlp.hpp"
#include "fcone/strongf.hpp"

using namespace fcone;

namespace {

CoordMask random_mask(std::mt19937_64& rng, int rho, int density) {
  CoordMask m = 0;
  for (int k = 0; k < rho; ++k)
    if (static_cast<int>(rng() % 100) < density) m |= CoordMask{1} << k;
  return m;
}

void BM_BracketScan(benchmark::State& state) {
  auto f = total_T(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_fnef_fn(f).ok);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BracketScan)->RangeMultiplier(2)->Range(8, 64)->Complexity(benchmark::oNCubed);

void BM_Lift(benchmark::State& state) {
  auto d = random_fnef_divisor(5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(lift(d, {2, 3, 5, 7}).verification.dominance);
}
BENCHMARK(BM_Lift)->Unit(benchmark::kMillisecond);

void BM_ExactSimplex(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  RationalSystem sys;
  for (int j = 0; j < m; ++j) sys.add_variable("x" + std::to_string(j));
  for (int i = 0; i < m; ++i) {
    SparseRow row;
    for (int j = 0; j < m; ++j) row.emplace_back(j, static_cast<long>(rng() % 7) - 2);
    sys.add_le(std::move(row), static_cast<long>(rng() % 10));
  }
  std::vector<Rational> obj(m, Rational(-1));
  sys.set_objective(obj);
  for (auto _ : state) benchmark::DoNotOptimize(optimize(sys).status);
}
BENCHMARK(BM_ExactSimplex)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Stratal(benchmark::State& state) {
  auto f = standard_A(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stratal_effectivity_symmetric(f).success);
}
BENCHMARK(BM_Stratal)->DenseRange(6, 9)->Unit(benchmark::kMillisecond);

void BM_SupportLP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BoundaryModel model(n);
  std::mt19937_64 rng(11);
  std::vector<CoordMask> masks;
  for (int t = 0; t < 64; ++t) masks.push_back(random_mask(rng, model.rho(), 30));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(supports_effective_pbd(model, SupportSet(n, masks[i++ % masks.size()])).supports());
}
BENCHMARK(BM_SupportLP)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

void BM_CriticalLP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  BoundaryModel model(n);
  std::mt19937_64 rng(13);
  std::vector<CoordMask> masks;
  for (int t = 0; t < 64; ++t) masks.push_back(random_mask(rng, model.rho(), 30));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(is_critical(model, SupportSet(n, masks[i++ % masks.size()])).critical());
}
BENCHMARK(BM_CriticalLP)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SupportCanonizer canon(n);
  std::mt19937_64 rng(17);
  std::vector<CoordMask> masks;
  for (int t = 0; t < 256; ++t) masks.push_back(random_mask(rng, canon.rho(), static_cast<int>(rng() % 100)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canon.canonicalize(masks[i++ % masks.size()]).form);
}
BENCHMARK(BM_Canonicalize)->DenseRange(6, 8)->Unit(benchmark::kMicrosecond);

void BM_SearchSix(benchmark::State& state) {
  SearchOptions o;
  o.max_nodes = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_all_supports(6, o).evaluated);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SearchSix)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_PbdRaysSix(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pbd_extremal_rays(6).rays);
}
BENCHMARK(BM_PbdRaysSix)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
