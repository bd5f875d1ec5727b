#include "uwqkd/qber.hpp"

#include <cmath>
#include <sstream>

#include "uwqkd/errors.hpp"

namespace uwqkd {
namespace {

constexpr double kHalfSlack = 1e-9;

// n_S q^(K+1) + 2 n_B0 (q + q^2 + ... + q^K)
double collected(double mean_photon_number, double q, int relays, double n_B0) {
  return mean_photon_number * std::pow(q, relays + 1) +
         2.0 * n_B0 * q * geometric_series(q, relays);
}

}  // namespace

LinkLayout::LinkLayout(double total_distance_m, int relays)
    : total_distance_m_(total_distance_m), relays_(relays) {
  if (!(total_distance_m > 0.0) || !std::isfinite(total_distance_m)) {
    throw DomainError("link layout: total distance must be finite and > 0");
  }
  if (relays < 0) throw DomainError("link layout: relay count must be >= 0");
}

void ChannelModel::validate() const {
  system.validate();
  water.validate();
  turbulence.validate();
  correction_coefficient(system.divergence_rad, system.aperture_diameter_m, water);
}

double ChannelModel::background() const {
  return background_photons(
      system, irradiance_at_depth(system.surface_irradiance, water.diffuse_atten_per_m,
                                  system.depth_m));
}

double ChannelModel::dark() const {
  return dark_counts(system.dark_count_rate_hz, system.bit_period_s);
}

Coefficients abc_coefficients(const SystemParams& system, const LinkLayout& layout,
                              double h, double mu, double n_B0, double n_D) {
  if (!(h > 0.0 && h <= 1.0) || !(mu > 0.0 && mu <= 1.0)) {
    throw DomainError("abc_coefficients: h and mu must lie in (0, 1]");
  }
  const double eta = system.quantum_efficiency;
  const double n_S = system.mean_photon_number;
  const int K = layout.relays();
  const double plain = collected(n_S, h, K, n_B0);
  const double faded = collected(n_S, mu * h, K, n_B0);
  Coefficients k;
  k.a = eta * plain;
  k.b = eta * (2.0 * n_B0 + 4.0 * n_D);
  k.c = faded / plain;
  return k;
}

double qber_bound_value(double quantum_efficiency, double mean_photon_number, int relays,
                        double h, double mu, double n_N_hat, const Coefficients& k) {
  const double eta = quantum_efficiency;
  const double mu_k = std::pow(mu, relays + 1);
  const double h_k = std::pow(h, relays + 1);
  const double numerator = 2.0 * eta * n_N_hat * std::exp(-4.0 * eta * n_N_hat) *
                           (1.0 - mu_k + std::exp(-eta * mean_photon_number * h_k) * mu_k);
  const double ab = k.a + k.b;
  const double denominator =
      k.b * std::exp(-k.b) * (1.0 - k.c) + ab * std::exp(-ab) * k.c;
  return numerator / denominator;
}

double qber_direct_value(double quantum_efficiency, double mean_photon_number, double h,
                         double mu, double n_N_hat) {
  const double fade = std::exp(-quantum_efficiency * mean_photon_number * h);
  const double bracket = 1.0 - mu + mu * fade;
  return n_N_hat * bracket /
         (0.5 * mean_photon_number * mu * h * fade + 2.0 * n_N_hat * bracket);
}

double qber_nonturbulent_value(double mean_photon_number, double mu0, double h, double n_N) {
  return 2.0 * n_N / (mean_photon_number * mu0 * h + 4.0 * n_N);
}

QberEvaluation qber_upper_bound(const ChannelModel& model, const LinkLayout& layout) {
  const auto& sys = model.system;
  QberEvaluation ev;
  ev.total_distance_m = layout.total_distance();
  ev.relays = layout.relays();

  const double l = layout.hop_length();
  ev.h_hop = path_loss(l, sys.divergence_rad, sys.aperture_diameter_m, model.water);
  const TransferResult transfer = average_power_transfer(
      l, sys.aperture_diameter_m, sys.wavelength_m, model.turbulence, model.transfer);
  ev.mu_hop = transfer.mu;
  ev.mu_error_estimate = transfer.abs_error_estimate;
  if (!(ev.h_hop > 0.0) || !(ev.mu_hop > 0.0)) {
    std::ostringstream os;
    os << "qber_upper_bound: link of " << layout.total_distance() << " m with "
       << layout.relays() << " relays has vanishing transmission (h = " << ev.h_hop
       << ", mu = " << ev.mu_hop << ")";
    throw DomainError(os.str());
  }

  ev.n_B0 = model.background();
  ev.n_D = model.dark();
  ev.n_N_hat = noise_bound(sys, model.water, layout.total_distance(), layout.relays(), ev.n_B0,
                           ev.n_D);
  const Coefficients k = abc_coefficients(sys, layout, ev.h_hop, ev.mu_hop, ev.n_B0, ev.n_D);
  ev.a = k.a;
  ev.b = k.b;
  ev.c = k.c;
  ev.qber_bound = qber_bound_value(sys.quantum_efficiency, sys.mean_photon_number,
                                   layout.relays(), ev.h_hop, ev.mu_hop, ev.n_N_hat, k);
  ev.exceeds_half = ev.qber_bound > 0.5 + kHalfSlack;
  if (!std::isfinite(ev.qber_bound) || ev.qber_bound < 0.0 ||
      (ev.exceeds_half && layout.relays() == 0)) {
    std::ostringstream os;
    os << "qber_upper_bound: bound " << ev.qber_bound << " outside [0, 1/2] at L = "
       << layout.total_distance() << " m";
    throw ConsistencyError(os.str());
  }
  return ev;
}

double qber_direct(const ChannelModel& model, double total_distance_m) {
  const auto& sys = model.system;
  const LinkLayout layout(total_distance_m, 0);
  const double h = path_loss(total_distance_m, sys.divergence_rad, sys.aperture_diameter_m,
                             model.water);
  const double mu = average_power_transfer(total_distance_m, sys.aperture_diameter_m,
                                           sys.wavelength_m, model.turbulence, model.transfer)
                        .mu;
  const double n_hat =
      noise_bound(sys, model.water, total_distance_m, 0, model.background(), model.dark());
  return qber_direct_value(sys.quantum_efficiency, sys.mean_photon_number, h, mu, n_hat);
}

double qber_nonturbulent(const ChannelModel& model, double total_distance_m) {
  const auto& sys = model.system;
  const LinkLayout layout(total_distance_m, 0);
  const double h = path_loss(total_distance_m, sys.divergence_rad, sys.aperture_diameter_m,
                             model.water);
  const double mu0 =
      vacuum_power_transfer(
          fresnel_product(sys.aperture_diameter_m, sys.wavelength_m, total_distance_m),
          model.transfer)
          .mu;
  const double n_N = 0.5 * model.background() + model.dark();
  return qber_nonturbulent_value(sys.mean_photon_number, mu0, h, n_N);
}

}  // namespace uwqkd
