#pragma once

#include <numbers>

#include "uwqkd/channel.hpp"
#include "uwqkd/units.hpp"

namespace uwqkd {

/// Transceiver and detector constants, SI units throughout.
struct SystemParams {
  double wavelength_m = 530e-9;
  double aperture_diameter_m = 0.05;
  double divergence_rad = deg_to_rad(6.0);  // full-width beam divergence
  double fov_rad = std::numbers::pi;         // detector field of view
  double filter_width_m = 30e-9;
  double bit_period_s = 35e-9;
  double gate_time_s = 200e-12;
  double quantum_efficiency = 0.5;
  double dark_count_rate_hz = 60.0;
  double mean_photon_number = 1.0;
  double depth_m = 100.0;
  double surface_irradiance = 0.0;   // W m^-2 m^-1 at the sea surface; set from a preset

  void validate() const;
  double aperture_area() const;

  bool operator==(const SystemParams&) const = default;
};

struct NoiseBudget {
  double n_B0 = 0.0;     // background photons per polarisation, one receiver
  double n_D = 0.0;      // dark counts per detector
  double n_N_hat = 0.0;  // upper bound at each of Bob's detectors
  double n_N = 0.0;      // accumulated noise for a given collected fraction
};

/// Sum of q^i for i in [0, terms). Exact at q = 1 (returns `terms`).
double geometric_series(double q, int terms);

/// R(z) = R(0) exp(-K_inf z).
double irradiance_at_depth(double surface_irradiance, double diffuse_atten_per_m,
                           double depth_m);

/// Mean background photons per polarisation collected in one gate.
double background_photons(const SystemParams& system, double irradiance);

double dark_counts(double dark_count_rate_hz, double bit_period_s);

/// Background accumulated over K passive relays and Bob, each relay
/// forwarding a fraction gamma. gamma = 1 returns n_B0 (K + 1).
double accumulated_background(double n_B0, double gamma, int relays);

/// Per-detector noise bound with relays forwarding all collected background
/// through the deterministic path loss only.
double noise_bound(const SystemParams& system, const WaterOpticalParams& water,
                   double total_distance_m, int relays, double n_B0, double n_D);

/// n_B0, n_D, the bound and the exact accumulated count for collected
/// fraction gamma per hop.
NoiseBudget noise_budget(const SystemParams& system, const WaterOpticalParams& water,
                         double total_distance_m, int relays, double gamma);

}  // namespace uwqkd
