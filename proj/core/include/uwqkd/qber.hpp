#pragma once

#include "uwqkd/channel.hpp"
#include "uwqkd/noise.hpp"
#include "uwqkd/transfer.hpp"

namespace uwqkd {

/// Total link length split into K + 1 equal hops.
class LinkLayout {
 public:
  LinkLayout(double total_distance_m, int relays);

  double total_distance() const { return total_distance_m_; }
  int relays() const { return relays_; }
  int hops() const { return relays_ + 1; }
  double hop_length() const { return total_distance_m_ / hops(); }

 private:
  double total_distance_m_;
  int relays_;
};

/// Everything needed to evaluate a link apart from its layout.
struct ChannelModel {
  SystemParams system;
  WaterOpticalParams water;
  TurbulenceParams turbulence;
  TransferOptions transfer;

  void validate() const;

  /// n_B0 at the configured depth.
  double background() const;
  double dark() const;
};

struct Coefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Sift/error coefficients for per-hop path loss h and average transfer mu.
Coefficients abc_coefficients(const SystemParams& system, const LinkLayout& layout,
                              double h, double mu, double n_B0, double n_D);

/// The bound itself, given its ingredients.
double qber_bound_value(double quantum_efficiency, double mean_photon_number, int relays,
                        double h, double mu, double n_N_hat, const Coefficients& k);

/// No-relay form of the bound for path loss h and transfer mu over the full link.
double qber_direct_value(double quantum_efficiency, double mean_photon_number, double h,
                         double mu, double n_N_hat);

/// Exact QBER without turbulence: 2 n_N / (n_S mu0 h + 4 n_N).
double qber_nonturbulent_value(double mean_photon_number, double mu0, double h, double n_N);

struct QberEvaluation {
  double total_distance_m = 0.0;
  int relays = 0;
  double h_hop = 0.0;
  double mu_hop = 0.0;
  double mu_error_estimate = 0.0;
  double n_B0 = 0.0;
  double n_D = 0.0;
  double n_N_hat = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double qber_bound = 0.0;
  // The bound can exceed 1/2 with relays: n_N_hat accumulates relay
  // background that b does not. Flagged, not thrown.
  bool exceeds_half = false;
};

/// Upper bound on QBER for the layout, with every intermediate retained.
/// Throws ConsistencyError if a no-relay bound exceeds 1/2.
QberEvaluation qber_upper_bound(const ChannelModel& model, const LinkLayout& layout);

/// The no-relay bound evaluated through its closed form.
double qber_direct(const ChannelModel& model, double total_distance_m);

/// Exact no-relay QBER in vacuum-like (non-turbulent) water.
double qber_nonturbulent(const ChannelModel& model, double total_distance_m);

}  // namespace uwqkd
