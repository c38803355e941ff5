#include <benchmark/benchmark.h>

#include "tentgrid/dyadic.hpp"
#include "tentgrid/full_maximal.hpp"
#include "tentgrid/generators.hpp"
#include "tentgrid/maximal.hpp"
#include "tentgrid/rng.hpp"
#include "tentgrid/stopping.hpp"

using namespace tentgrid;

static void BM_DyadicMaximal(benchmark::State& state) {
  Window win{0, static_cast<int>(state.range(0))};
  Weight w = gen_perturbed_weight(0.3, 0.5, 1, win);
  TileFunction f = TileFunction::from_tiles(win, gen_tile_values(2, win, "lognormal"));
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_weighted_maximal(f, w, dyadic::Beta::Third));
  state.SetItemsProcessed(state.iterations() * win.cell_count());
}
BENCHMARK(BM_DyadicMaximal)->DenseRange(6, 12, 2);

static void BM_FullMaximal(benchmark::State& state) {
  Window win{0, 6};
  Weight w = Weight::lebesgue(win);
  TileFunction f = TileFunction::from_tiles(win, gen_tile_values(3, win, "spiky"));
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_maximal(f, w, res));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * res)));
}
BENCHMARK(BM_FullMaximal)->DenseRange(7, 10, 1)->Unit(benchmark::kMillisecond);

static void BM_CoverTwo(benchmark::State& state) {
  Rng rng(4);
  std::vector<dyadic::Interval> xs;
  for (int i = 0; i < 4096; ++i) {
    GridCoord lo = GridCoord::from_parts(rng.range(-(std::int64_t{1} << 40), std::int64_t{1} << 40), 20);
    xs.push_back({lo, lo + GridCoord::from_parts(rng.range(1, std::int64_t{1} << 30), 20)});
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dyadic::cover_two(xs[k]));
    benchmark::DoNotOptimize(dyadic::envelope_6x(xs[k]));
    k = (k + 1) % xs.size();
  }
}
BENCHMARK(BM_CoverTwo);

BENCHMARK_MAIN();
