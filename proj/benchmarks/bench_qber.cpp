#include <benchmark/benchmark.h>

#include "uwqkd/presets.hpp"
#include "uwqkd/qber.hpp"

static void BM_QberUpperBound(benchmark::State& state) {
  uwqkd::ChannelModel model;
  model.system.surface_irradiance =
      uwqkd::PresetCatalog::builtin().find(uwqkd::kNightPreset).irradiance_si();
  const uwqkd::LinkLayout layout(90.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uwqkd::qber_upper_bound(model, layout).qber_bound);
}
BENCHMARK(BM_QberUpperBound)->Arg(0)->Arg(2)->Arg(8);
