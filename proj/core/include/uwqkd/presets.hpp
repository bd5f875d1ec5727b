#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uwqkd {

/// Named sea-surface spectral irradiance.
struct IrradiancePreset {
  std::string name;
  double irradiance_w_m2_nm = 0.0;  // as stored in the preset file
  std::string description;
  std::string source;

  /// W m^-2 m^-1, the unit used by SystemParams.
  double irradiance_si() const { return irradiance_w_m2_nm * 1e9; }
};

class PresetCatalog {
 public:
  /// Parses the preset file format; throws ConfigError on malformed input.
  static PresetCatalog parse(std::string_view json_text, std::string_view source_name = "presets");
  static PresetCatalog load(const std::string& path);

  /// Presets compiled in from core/data/presets.json.
  static const PresetCatalog& builtin();

  /// Throws ConfigError listing the known names when `name` is absent.
  const IrradiancePreset& find(std::string_view name) const;

  const std::vector<IrradiancePreset>& presets() const { return presets_; }

 private:
  std::vector<IrradiancePreset> presets_;
};

/// Text of the preset file embedded at build time.
std::string_view embedded_preset_json();

inline constexpr std::string_view kNightPreset = "night_full_moon_clear";
inline constexpr std::string_view kDayPreset = "day_overcast_sun_horizon";

}  // namespace uwqkd
