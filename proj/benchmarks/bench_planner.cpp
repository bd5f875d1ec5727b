#include <benchmark/benchmark.h>

#include "uwqkd/planner.hpp"
#include "uwqkd/presets.hpp"

static void BM_AchievableDistance(benchmark::State& state) {
  uwqkd::ChannelModel model;
  model.system.surface_irradiance =
      uwqkd::PresetCatalog::builtin().find(uwqkd::kNightPreset).irradiance_si();
  uwqkd::SearchOptions opts;
  opts.resolution_m = 0.05;
  const int relays = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(uwqkd::achievable_distance(model, relays, opts).achievable_m);
  }
}
BENCHMARK(BM_AchievableDistance)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);
