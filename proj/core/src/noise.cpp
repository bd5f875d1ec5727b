#include "uwqkd/noise.hpp"

#include <cmath>
#include <numbers>

#include "uwqkd/errors.hpp"
#include "uwqkd/units.hpp"

namespace uwqkd {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

void SystemParams::validate() const {
  require(wavelength_m > 0.0, "wavelength: must be > 0");
  require(aperture_diameter_m > 0.0, "aperture_diameter: must be > 0");
  require(divergence_rad > 0.0, "divergence: must be > 0");
  require(fov_rad > 0.0 && fov_rad <= std::numbers::pi,
          "fov: field of view Ω ∈ (0,180] deg violated");
  require(filter_width_m > 0.0, "filter_width: must be > 0");
  require(bit_period_s > 0.0, "bit_period: must be > 0");
  require(gate_time_s > 0.0, "gate_time: must be > 0");
  require(quantum_efficiency > 0.0 && quantum_efficiency <= 1.0,
          "quantum_efficiency: quantum efficiency ∈ (0,1] violated");
  require(dark_count_rate_hz > 0.0, "dark_count_rate: must be > 0");
  require(mean_photon_number > 0.0, "mean_photon_number: must be > 0");
  require(depth_m >= 0.0, "depth: must be >= 0");
  require(surface_irradiance > 0.0, "surface_irradiance: must be > 0");
}

double SystemParams::aperture_area() const {
  return std::numbers::pi * aperture_diameter_m * aperture_diameter_m / 4.0;
}

double geometric_series(double q, int terms) {
  if (terms <= 0) return 0.0;
  if (terms <= 64) {
    double sum = 0.0;
    for (int i = 0; i < terms; ++i) sum = sum * q + 1.0;
    return sum;
  }
  if (q == 1.0) return terms;
  // (1 - q^n) / (1 - q) without cancellation near q = 1
  if (q > 0.0) return std::expm1(terms * std::log(q)) / (q - 1.0);
  return (1.0 - std::pow(q, terms)) / (1.0 - q);
}

double irradiance_at_depth(double surface_irradiance, double diffuse_atten_per_m,
                           double depth_m) {
  require(depth_m >= 0.0, "irradiance_at_depth: depth must be >= 0");
  return surface_irradiance * std::exp(-diffuse_atten_per_m * depth_m);
}

double background_photons(const SystemParams& system, double irradiance) {
  const double solid = 1.0 - std::cos(system.fov_rad);
  return std::numbers::pi * irradiance * system.aperture_area() * system.gate_time_s *
         system.wavelength_m * system.filter_width_m * solid /
         (2.0 * kPlanck * kSpeedOfLight);
}

double dark_counts(double dark_count_rate_hz, double bit_period_s) {
  require(dark_count_rate_hz >= 0.0 && bit_period_s >= 0.0,
          "dark_counts: rate and period must be >= 0");
  return dark_count_rate_hz * bit_period_s;
}

double accumulated_background(double n_B0, double gamma, int relays) {
  require(gamma >= 0.0 && gamma <= 1.0, "accumulated_background: gamma must lie in [0, 1]");
  require(relays >= 0, "accumulated_background: relay count must be >= 0");
  return n_B0 * geometric_series(gamma, relays + 1);
}

double noise_bound(const SystemParams& system, const WaterOpticalParams& water,
                   double total_distance_m, int relays, double n_B0, double n_D) {
  require(total_distance_m > 0.0, "noise_bound: distance must be > 0");
  require(relays >= 0, "noise_bound: relay count must be >= 0");
  const double d = system.aperture_diameter_m;
  const double theta = system.divergence_rad;
  const double T = correction_coefficient(theta, d, water);
  const double s = water.extinction_per_m;
  const double hops = relays + 1.0;

  // 1 - exp(-u) in both numerator and denominator, via expm1
  const double u_total = s * std::pow(total_distance_m, 1.0 - T) * std::pow(d * hops / theta, T);
  const double u_hop = s * std::pow(total_distance_m / hops, 1.0 - T) * std::pow(d / theta, T);
  const double ratio = (u_hop == 0.0) ? hops : std::expm1(-u_total) / std::expm1(-u_hop);
  return 0.5 * n_B0 * ratio + n_D;
}

NoiseBudget noise_budget(const SystemParams& system, const WaterOpticalParams& water,
                         double total_distance_m, int relays, double gamma) {
  NoiseBudget out;
  const double irradiance =
      irradiance_at_depth(system.surface_irradiance, water.diffuse_atten_per_m, system.depth_m);
  out.n_B0 = background_photons(system, irradiance);
  out.n_D = dark_counts(system.dark_count_rate_hz, system.bit_period_s);
  out.n_N_hat = noise_bound(system, water, total_distance_m, relays, out.n_B0, out.n_D);
  out.n_N = 0.5 * accumulated_background(out.n_B0, gamma, relays) + out.n_D;
  return out;
}

}  // namespace uwqkd
