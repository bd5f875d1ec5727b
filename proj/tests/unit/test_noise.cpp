#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "uwqkd/channel.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/noise.hpp"
#include "uwqkd/presets.hpp"
#include "uwqkd/units.hpp"

using namespace uwqkd;

namespace {

SystemParams night_system() {
  SystemParams sys;
  sys.surface_irradiance = PresetCatalog::builtin().find(kNightPreset).irradiance_si();
  return sys;
}

double explicit_bound(const SystemParams& sys, const WaterOpticalParams& water, double L,
                      int K, double n_B0, double n_D) {
  const double l = L / (K + 1);
  const double h = path_loss(l, sys.divergence_rad, sys.aperture_diameter_m, water);
  double sum = 0.0, term = 1.0;
  for (int i = 0; i <= K; ++i) {
    sum += term;
    term *= h;
  }
  return 0.5 * n_B0 * sum + n_D;
}

}  // namespace

TEST_CASE("irradiance at depth") {
  CHECK(irradiance_at_depth(2.5, 0.08, 0.0) == 2.5);
  CHECK(irradiance_at_depth(1.0, 0.08, 100.0) ==
        doctest::Approx(0.00033546262790251184).epsilon(1e-14));
}

TEST_CASE("background photons") {
  SystemParams sys = night_system();
  const double irr = irradiance_at_depth(sys.surface_irradiance, 0.08, sys.depth_m);
  const double expected = std::numbers::pi * irr * sys.aperture_area() * sys.gate_time_s *
                          sys.wavelength_m * sys.filter_width_m * 2.0 /
                          (2.0 * kPlanck * kSpeedOfLight);
  CHECK(background_photons(sys, irr) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(background_photons(sys, irr) == doctest::Approx(9.93792122391e-08).epsilon(1e-10));
  sys.fov_rad = 1e-9;
  CHECK(background_photons(sys, irr) < 1e-20);
}

TEST_CASE("dark counts") {
  CHECK(dark_counts(60.0, 35e-9) == doctest::Approx(2.1e-6).epsilon(1e-14));
  CHECK(dark_counts(0.0, 35e-9) == 0.0);
}

TEST_CASE("accumulated background") {
  CHECK(accumulated_background(3.0, 0.7, 0) == 3.0);
  CHECK(accumulated_background(3.0, 0.0, 5) == 3.0);
  CHECK(accumulated_background(1.0, 0.5, 2) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(accumulated_background(2.0, 1.0, 4) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("geometric series branches") {
  for (double q : {0.0, 1e-12, 0.3, 0.999999, 1.0}) {
    for (int n : {1, 5, 64, 65, 200}) {
      double sum = 0.0, term = 1.0;
      for (int i = 0; i < n; ++i) {
        sum += term;
        term *= q;
      }
      CHECK(geometric_series(q, n) == doctest::Approx(sum).epsilon(1e-12));
    }
  }
}

TEST_CASE("noise bound closed form equals explicit sum") {
  const SystemParams sys = night_system();
  const WaterOpticalParams water;
  CHECK(noise_bound(sys, water, 90.0, 0, 1e-7, 2.1e-6) ==
        doctest::Approx(0.5e-7 + 2.1e-6).epsilon(1e-14));
  CHECK(noise_bound(sys, water, 90.0, 2, 1e-7, 2.1e-6) ==
        doctest::Approx(explicit_bound(sys, water, 90.0, 2, 1e-7, 2.1e-6)).epsilon(1e-12));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uL(1.0, 400.0), ud(0.05, 0.3), uth(1.0, 20.0),
      unb(1e-9, 1e-2);
  std::uniform_int_distribution<int> uK(0, 12);
  for (int i = 0; i < 2000; ++i) {
    SystemParams s = sys;
    s.aperture_diameter_m = ud(rng);
    s.divergence_rad = deg_to_rad(uth(rng));
    WaterOpticalParams w;
    for (auto& row : w.correction_table) row.divergence_rad = s.divergence_rad;
    const double L = uL(rng), n_B0 = unb(rng);
    const int K = uK(rng);
    CHECK(noise_bound(s, w, L, K, n_B0, 2.1e-6) ==
          doctest::Approx(explicit_bound(s, w, L, K, n_B0, 2.1e-6)).epsilon(1e-12));
  }
}

TEST_CASE("accumulated noise never exceeds the bound") {
  const SystemParams sys = night_system();
  const WaterOpticalParams water;
  for (int K = 0; K <= 8; ++K) {
    for (double L = 10.0; L <= 200.0; L += 10.0) {
      const double h = path_loss(L / (K + 1), sys.divergence_rad, 0.05, water);
      for (double mu : {0.0, 0.2, 0.9, 1.0}) {
        const NoiseBudget nb = noise_budget(sys, water, L, K, mu * h);
        CHECK(nb.n_B0 >= 0.0);
        CHECK(nb.n_D >= 0.0);
        CHECK(nb.n_N <= nb.n_N_hat + 1e-15);
      }
    }
  }
}

TEST_CASE("system validation names the bound") {
  SystemParams sys;
  sys.quantum_efficiency = 1.5;
  CHECK_THROWS_WITH_AS(sys.validate(), doctest::Contains("quantum efficiency ∈ (0,1]"),
                       DomainError);
}
