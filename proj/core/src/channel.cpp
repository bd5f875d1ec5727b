#include "uwqkd/channel.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "uwqkd/errors.hpp"
#include "uwqkd/units.hpp"

namespace uwqkd {
namespace {

// Divergences in tables come from degree values; compare loosely.
constexpr double kAngleMatch = 1e-9;
constexpr double kDiameterMatch = 1e-12;

std::string describe(double divergence_rad, double diameter_m) {
  std::ostringstream os;
  os << "no correction data for divergence " << rad_to_deg(divergence_rad)
     << " deg, diameter " << diameter_m << " m";
  return os.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// The phase-front factor's overall scale, without rho and without l.
double structure_scale(double wavelength_m, const TurbulenceParams& t) {
  const double k = 2.0 * std::numbers::pi / wavelength_m;
  const double omega2 = t.omega * t.omega;
  const double balance =
      omega2 + t.eddy_diffusivity_ratio - t.omega * (t.eddy_diffusivity_ratio + 1.0);
  return 1.44 * std::numbers::pi * k * k *
         (t.thermal_expansion * t.thermal_expansion * t.chi / omega2) *
         std::pow(t.epsilon, -1.0 / 3.0) * balance;
}

}  // namespace

std::vector<CorrectionEntry> WaterOpticalParams::clear_ocean_correction_table() {
  const double theta = deg_to_rad(6.0);
  return {{theta, 0.05, 0.13}, {theta, 0.10, 0.16}, {theta, 0.20, 0.21}, {theta, 0.30, 0.26}};
}

void WaterOpticalParams::validate() const {
  require(extinction_per_m > 0.0, "extinction_coeff: extinction coefficient must be > 0");
  require(diffuse_atten_per_m >= 0.0, "diffuse_atten: diffuse attenuation must be >= 0");
  require(!correction_table.empty(), "correction_table: at least one row required");
  for (std::size_t i = 0; i < correction_table.size(); ++i) {
    const auto& row = correction_table[i];
    require(row.coefficient > 0.0 && row.coefficient < 1.0,
            "correction_table: correction coefficient T ∈ (0,1) violated");
    require(row.divergence_rad > 0.0 && row.diameter_m > 0.0,
            "correction_table: divergence and diameter must be > 0");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = correction_table[j];
      require(!(std::fabs(other.divergence_rad - row.divergence_rad) <= kAngleMatch &&
                std::fabs(other.diameter_m - row.diameter_m) <= kDiameterMatch),
              "correction_table: duplicate (divergence, diameter) row");
    }
  }
}

void TurbulenceParams::validate() const {
  require(epsilon > 0.0, "epsilon: dissipation rate of kinetic energy must be > 0");
  require(chi >= 0.0, "chi: dissipation rate of temperature variance must be >= 0");
  require(viscosity > 0.0, "nu: kinematic viscosity must be > 0");
  require(omega != 0.0, "omega: temperature/salinity ratio must be nonzero");
  require(std::isfinite(thermal_expansion), "alpha: thermal expansion must be finite");
  require(std::isfinite(eddy_diffusivity_ratio), "d_r: eddy diffusivity ratio must be finite");
}

double correction_coefficient(double divergence_rad, double diameter_m,
                              const WaterOpticalParams& water) {
  std::optional<CorrectionEntry> below;
  std::optional<CorrectionEntry> above;
  for (const auto& row : water.correction_table) {
    if (std::fabs(row.divergence_rad - divergence_rad) > kAngleMatch) continue;
    if (std::fabs(row.diameter_m - diameter_m) <= kDiameterMatch) return row.coefficient;
    if (row.diameter_m < diameter_m && (!below || row.diameter_m > below->diameter_m)) below = row;
    if (row.diameter_m > diameter_m && (!above || row.diameter_m < above->diameter_m)) above = row;
  }
  if (!below || !above) throw NoCorrectionData(describe(divergence_rad, diameter_m));
  const double t = (diameter_m - below->diameter_m) / (above->diameter_m - below->diameter_m);
  return below->coefficient + t * (above->coefficient - below->coefficient);
}

double path_loss(double length_m, double divergence_rad, double diameter_m,
                 double coefficient, double extinction_per_m) {
  require(length_m >= 0.0, "path_loss: length must be >= 0");
  require(diameter_m > 0.0 && divergence_rad > 0.0,
          "path_loss: diameter and divergence must be > 0");
  require(coefficient > 0.0 && coefficient < 1.0, "path_loss: T must lie in (0, 1)");
  if (length_m == 0.0) return 1.0;
  // s * l^(1-T) * (d/theta)^T, the l -> 0 safe form
  const double exponent = extinction_per_m * std::pow(length_m, 1.0 - coefficient) *
                          std::pow(diameter_m / divergence_rad, coefficient);
  return std::exp(-exponent);
}

double path_loss(double length_m, double divergence_rad, double diameter_m,
                 const WaterOpticalParams& water) {
  return path_loss(length_m, divergence_rad, diameter_m,
                   correction_coefficient(divergence_rad, diameter_m, water),
                   water.extinction_per_m);
}

double kolmogorov_microscale(double viscosity, double epsilon) {
  require(viscosity > 0.0, "kolmogorov_microscale: viscosity must be > 0");
  require(epsilon > 0.0, "kolmogorov_microscale: epsilon must be > 0");
  return std::pow(viscosity * viscosity * viscosity / epsilon, 0.25);
}

double wave_structure(double separation_m, double length_m, double wavelength_m,
                      const TurbulenceParams& turbulence, double microscale_m) {
  require(separation_m >= 0.0 && length_m >= 0.0,
          "wave_structure: separation and length must be >= 0");
  const double eddies = 1.175 * std::pow(microscale_m, 2.0 / 3.0) * separation_m +
                        0.419 * std::pow(separation_m, 5.0 / 3.0);
  return structure_scale(wavelength_m, turbulence) * length_m * eddies;
}

double WaveStructureProfile::operator()(double separation_m) const {
  if (separation_m <= 0.0) return 0.0;
  return linear * separation_m + five_thirds * std::pow(separation_m, 5.0 / 3.0);
}

WaveStructureProfile wave_structure_profile(double length_m, double wavelength_m,
                                            const TurbulenceParams& turbulence) {
  const double scale = structure_scale(wavelength_m, turbulence) * length_m;
  const double eta = kolmogorov_microscale(turbulence.viscosity, turbulence.epsilon);
  return {scale * 1.175 * std::pow(eta, 2.0 / 3.0), scale * 0.419};
}

}  // namespace uwqkd
