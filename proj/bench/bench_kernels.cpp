#include <benchmark/benchmark.h>

#include "edgemc/edge_growth.hpp"
#include "edgemc/mc.hpp"
#include "edgemc/volume.hpp"

namespace {

using namespace edgemc;

Volume sphere_of(int n) {
  const double c = (n - 1) / 2.0;
  return gen_sphere({n, n, n}, {c, c, c}, 0.4 * (n - 1), 100.0f, 0.0f);
}

void BM_McSerial(benchmark::State& state) {
  const Volume v = sphere_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_mc(v, 50.0, InterpMode::three_segment()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * v.cube_count()));
}

void BM_McParallel(benchmark::State& state) {
  const Volume v = sphere_of(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_mc_parallel(v, 50.0, InterpMode::three_segment()));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * v.cube_count()));
}

// Seeds on the whole volume: the middle layer of a sphere with a
// half-integer center has no single-corner cells.
void BM_EdgeGrowth(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Volume v = sphere_of(n);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(v, 50.0, SeedBox{0, n, 0, n, 0, n}));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * v.cube_count()));
}

}  // namespace

BENCHMARK(BM_McSerial)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McParallel)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeGrowth)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
