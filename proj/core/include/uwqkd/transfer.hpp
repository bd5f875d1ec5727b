#pragma once

#include <cstddef>

#include "uwqkd/channel.hpp"

namespace uwqkd {

struct TransferOptions {
  double abs_tolerance = 1e-10;
  std::size_t max_evaluations = 4'000'000;

  bool operator==(const TransferOptions&) const = default;
};

struct TransferResult {
  double mu = 0.0;            // clamped to [0, 1]
  double fresnel = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Fresnel number product (pi d^2 / (4 lambda l))^2 of equal apertures.
double fresnel_product(double diameter_m, double wavelength_m, double length_m);

/// acos(x) - x sqrt(1 - x^2): the overlap kernel of two equal circular
/// apertures at normalised separation x in [0, 1].
double aperture_overlap(double x);

/// Average near-field power transfer of one hop through turbulence.
///
/// Integrates (8 sqrt(F) / pi) * exp(-W(d x, l) / 2) * overlap(x) * J1(4 x sqrt(F))
/// over x in [0, 1]. The initial partition keeps every panel shorter than half
/// a J1 oscillation, pi / (4 sqrt(F)). Throws ConvergenceError when the
/// evaluation budget is exhausted and ConsistencyError if the raw value falls
/// outside [-tol, 1 + tol].
TransferResult average_power_transfer(double length_m, double diameter_m,
                                      double wavelength_m,
                                      const TurbulenceParams& turbulence,
                                      const TransferOptions& options = {});

/// Vacuum limit of the same expression (W = 0); depends on F only.
TransferResult vacuum_power_transfer(double fresnel, const TransferOptions& options = {});

}  // namespace uwqkd
