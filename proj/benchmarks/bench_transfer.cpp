#include <benchmark/benchmark.h>

#include "uwqkd/transfer.hpp"

static void BM_VacuumTransfer(benchmark::State& state) {
  const double F = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(uwqkd::vacuum_power_transfer(F).mu);
}
BENCHMARK(BM_VacuumTransfer)->Arg(1)->Arg(100)->Arg(10000);

static void BM_TurbulentTransfer(benchmark::State& state) {
  const uwqkd::TurbulenceParams turb;
  const double l = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(uwqkd::average_power_transfer(l, 0.05, 530e-9, turb).mu);
  }
}
BENCHMARK(BM_TurbulentTransfer)->Arg(10)->Arg(50)->Arg(100);
