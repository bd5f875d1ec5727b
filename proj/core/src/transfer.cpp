#include "uwqkd/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uwqkd/bessel.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/quadrature.hpp"

namespace uwqkd {
namespace {

TransferResult integrate_transfer(double fresnel, const WaveStructureProfile* profile,
                                  double diameter_m, const TransferOptions& options) {
  if (!(options.abs_tolerance > 0.0)) throw DomainError("power transfer: tolerance must be > 0");
  const double root_f = std::sqrt(fresnel);
  const double prefactor = 8.0 * root_f / std::numbers::pi;
  const double frequency = 4.0 * root_f;

  auto integrand = [&](double x) {
    double value = aperture_overlap(x) * bessel_j1(frequency * x);
    if (profile != nullptr) value *= std::exp(-0.5 * (*profile)(diameter_m * x));
    return value;
  };

  AdaptiveQuadrature quad;
  quad.abs_tolerance = options.abs_tolerance / prefactor;
  quad.max_panel_width = std::numbers::pi / frequency;
  quad.max_evaluations = options.max_evaluations;
  const QuadratureResult q = integrate(integrand, 0.0, 1.0, quad);

  TransferResult result;
  result.fresnel = fresnel;
  result.abs_error_estimate = q.abs_error * prefactor;
  result.evaluations = q.evaluations;
  if (!q.converged) {
    std::ostringstream os;
    os << "power transfer quadrature did not converge (F = " << fresnel
       << ", error estimate " << result.abs_error_estimate << " > tolerance "
       << options.abs_tolerance << " after " << q.evaluations << " evaluations)";
    throw ConvergenceError(os.str(), result.abs_error_estimate, q.evaluations);
  }
  const double raw = prefactor * q.value;
  const double tol = options.abs_tolerance;
  if (raw < -tol || raw > 1.0 + tol) {
    std::ostringstream os;
    os << "power transfer " << raw << " outside [0, 1] beyond tolerance (F = " << fresnel << ")";
    throw ConsistencyError(os.str());
  }
  result.mu = std::clamp(raw, 0.0, 1.0);
  return result;
}

}  // namespace

double fresnel_product(double diameter_m, double wavelength_m, double length_m) {
  if (!(diameter_m > 0.0) || !(wavelength_m > 0.0) || !(length_m > 0.0)) {
    throw DomainError("fresnel_product: diameter, wavelength and length must be > 0");
  }
  const double root = std::numbers::pi * diameter_m * diameter_m / (4.0 * wavelength_m * length_m);
  return root * root;
}

double aperture_overlap(double x) {
  if (x >= 1.0) return 0.0;
  return std::acos(x) - x * std::sqrt((1.0 - x) * (1.0 + x));
}

TransferResult average_power_transfer(double length_m, double diameter_m,
                                      double wavelength_m,
                                      const TurbulenceParams& turbulence,
                                      const TransferOptions& options) {
  const double fresnel = fresnel_product(diameter_m, wavelength_m, length_m);
  if (!turbulence.enabled()) return integrate_transfer(fresnel, nullptr, diameter_m, options);
  const WaveStructureProfile profile = wave_structure_profile(length_m, wavelength_m, turbulence);
  return integrate_transfer(fresnel, &profile, diameter_m, options);
}

TransferResult vacuum_power_transfer(double fresnel, const TransferOptions& options) {
  if (!(fresnel > 0.0)) throw DomainError("vacuum_power_transfer: F must be > 0");
  return integrate_transfer(fresnel, nullptr, 1.0, options);
}

}  // namespace uwqkd
