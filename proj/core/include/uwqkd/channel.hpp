#pragma once

#include <vector>

namespace uwqkd {

/// One row of the modified Beer-Lambert correction-coefficient fit.
struct CorrectionEntry {
  double divergence_rad = 0.0;
  double diameter_m = 0.0;
  double coefficient = 0.0;  // T, strictly inside (0, 1)

  bool operator==(const CorrectionEntry&) const = default;
};

/// Deterministic optical properties of the water column.
struct WaterOpticalParams {
  double extinction_per_m = 0.151;     // clear ocean
  double diffuse_atten_per_m = 0.08;   // K_inf
  std::vector<CorrectionEntry> correction_table = clear_ocean_correction_table();

  /// Rows measured for a 6 degree beam at 5, 10, 20 and 30 cm apertures.
  static std::vector<CorrectionEntry> clear_ocean_correction_table();

  /// Throws DomainError naming the offending field.
  void validate() const;

  bool operator==(const WaterOpticalParams&) const = default;
};

/// Oceanic turbulence constants. Setting chi = 0 switches turbulence off
/// (the wave structure function vanishes identically).
struct TurbulenceParams {
  double omega = -2.2;                   // temperature/salinity balance
  double epsilon = 1e-5;                 // m^2 / s^3
  double chi = 1e-5;                     // K^2 / s^3
  double thermal_expansion = 2.56e-4;    // 1 / deg
  double viscosity = 1.0576e-6;          // m^2 / s
  double eddy_diffusivity_ratio = 0.0;

  void validate() const;
  bool enabled() const { return chi > 0.0; }

  bool operator==(const TurbulenceParams&) const = default;
};

/// Correction coefficient T for a beam divergence and aperture diameter.
///
/// Exact table rows are returned as-is; diameters between two rows of the
/// same divergence are interpolated linearly. Anything else throws
/// NoCorrectionData.
double correction_coefficient(double divergence_rad, double diameter_m,
                              const WaterOpticalParams& water);

/// Modified Beer-Lambert path loss h(l) = exp(-s l (d / (theta l))^T).
double path_loss(double length_m, double divergence_rad, double diameter_m,
                 double coefficient, double extinction_per_m);

/// Same, looking T up in the water's correction table.
double path_loss(double length_m, double divergence_rad, double diameter_m,
                 const WaterOpticalParams& water);

/// (nu^3 / epsilon)^(1/4).
double kolmogorov_microscale(double viscosity, double epsilon);

/// Underwater wave structure function for transverse separation rho after
/// propagating `length_m`.
double wave_structure(double separation_m, double length_m, double wavelength_m,
                      const TurbulenceParams& turbulence, double microscale_m);

/// W(rho) = linear * rho + five_thirds * rho^(5/3) at a fixed hop length,
/// with the prefactors evaluated once.
struct WaveStructureProfile {
  double linear = 0.0;
  double five_thirds = 0.0;

  double operator()(double separation_m) const;
};

WaveStructureProfile wave_structure_profile(double length_m, double wavelength_m,
                                            const TurbulenceParams& turbulence);

}  // namespace uwqkd
