#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwqkd/channel.hpp"
#include "uwqkd/planner.hpp"
#include "uwqkd/presets.hpp"
#include "uwqkd/qber.hpp"

namespace uwqkd {

// Configuration mirrors the file schema in the units a user writes (degrees,
// nanometres, ...). Physics types are built from it on demand, so a
// load -> serialize -> load round trip never passes through unit conversion.

struct SystemConfig {
  double wavelength_nm = 530.0;
  double aperture_diameter_m = 0.05;
  double divergence_deg = 6.0;
  double fov_deg = 180.0;
  double filter_width_nm = 30.0;
  double bit_period_ns = 35.0;
  double gate_time_ps = 200.0;
  double quantum_efficiency = 0.5;
  double dark_count_rate_hz = 60.0;
  double mean_photon_number = 1.0;
  double depth_m = 100.0;
  // Overrides the preset's sea-surface irradiance when set.
  std::optional<double> surface_irradiance_w_m2_nm;

  bool operator==(const SystemConfig&) const = default;
};

struct CorrectionRow {
  double divergence_deg = 6.0;
  double diameter_m = 0.05;
  double coefficient = 0.13;

  bool operator==(const CorrectionRow&) const = default;
};

struct WaterConfig {
  double extinction_per_m = 0.151;
  double diffuse_atten_per_m = 0.08;
  std::vector<CorrectionRow> correction_table = {
      {6.0, 0.05, 0.13}, {6.0, 0.10, 0.16}, {6.0, 0.20, 0.21}, {6.0, 0.30, 0.26}};

  bool operator==(const WaterConfig&) const = default;
};

struct LayoutConfig {
  double distance_m = 89.0;
  int relays = 0;

  bool operator==(const LayoutConfig&) const = default;
};

struct NumericsConfig {
  double tolerance = 1e-10;
  std::size_t max_evaluations = 4'000'000;
  double threshold = kSecurityThreshold;
  double resolution_m = 0.5;
  double start_distance_m = 1.0;
  double max_distance_m = 1000.0;
  int max_relays = 8;
  unsigned threads = 0;

  bool operator==(const NumericsConfig&) const = default;
};

struct OutputConfig {
  std::string path;
  std::string format = "csv";

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::string preset = std::string(kNightPreset);
  SystemConfig system;
  WaterConfig water;
  TurbulenceParams turbulence;
  LayoutConfig layout;
  NumericsConfig numerics;
  OutputConfig output;

  /// SI physics parameters, irradiance resolved through `catalog`.
  ChannelModel channel_model(const PresetCatalog& catalog = PresetCatalog::builtin()) const;
  SearchOptions search_options() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a config document. Unset fields keep their defaults;
/// unknown keys are rejected. `source` prefixes diagnostics.
RunConfig parse_config(std::string_view text, std::string_view source = "config",
                       const PresetCatalog& catalog = PresetCatalog::builtin());

RunConfig load_config(const std::string& path,
                      const PresetCatalog& catalog = PresetCatalog::builtin());

/// Full document including defaults; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Throws ConfigError naming the first offending field and its bound.
void validate_config(const RunConfig& config,
                     const PresetCatalog& catalog = PresetCatalog::builtin());

/// Built-in figure reproductions: "fig2", "fig3", "fig4", "fig5". Each is one
/// or more sweeps whose datasets concatenate.
std::vector<SweepSpec> figure_sweeps(std::string_view name, const RunConfig& base,
                                     const PresetCatalog& catalog = PresetCatalog::builtin());

bool is_figure_name(std::string_view name);

/// Custom sweep file: {"variable", "values", "relays"?, "threshold"?, "preset"?,
/// "config"?}. "config" is a full config document; otherwise `base` is used.
std::vector<SweepSpec> load_sweep_file(const std::string& path, const RunConfig& base,
                                       const PresetCatalog& catalog = PresetCatalog::builtin());

/// Total distances for the figure-2/3 sweeps: 10 m to 150 m in 1 m steps.
std::vector<double> figure_distance_grid();

}  // namespace uwqkd
