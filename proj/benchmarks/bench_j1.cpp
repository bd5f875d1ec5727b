#include <benchmark/benchmark.h>

#include <cmath>

#include "uwqkd/bessel.hpp"

static void BM_BesselJ1(benchmark::State& state) {
  const double top = static_cast<double>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x += 0.0137;
    if (x > top) x -= top;
    benchmark::DoNotOptimize(uwqkd::bessel_j1(x));
  }
}
BENCHMARK(BM_BesselJ1)->Arg(8)->Arg(25)->Arg(400);

static void BM_StdCylBesselJ1(benchmark::State& state) {
  const double top = static_cast<double>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x += 0.0137;
    if (x > top) x -= top;
    benchmark::DoNotOptimize(std::cyl_bessel_j(1.0, x));
  }
}
BENCHMARK(BM_StdCylBesselJ1)->Arg(8)->Arg(25)->Arg(400);
