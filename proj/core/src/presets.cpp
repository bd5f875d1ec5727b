#include "uwqkd/presets.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uwqkd/errors.hpp"

namespace uwqkd {

PresetCatalog PresetCatalog::parse(std::string_view json_text, std::string_view source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("presets") || !doc["presets"].is_array()) {
    throw ConfigError(std::string(source_name) + ": expected an object with a \"presets\" array",
                      "presets");
  }
  PresetCatalog catalog;
  std::set<std::string> seen;
  const std::set<std::string> allowed = {"name", "R_d0_w_m2_nm", "description", "source"};
  for (const auto& entry : doc["presets"]) {
    for (const auto& [key, _] : entry.items()) {
      if (!allowed.contains(key)) {
        throw ConfigError(std::string(source_name) + ": unknown preset key \"" + key + "\"", key);
      }
    }
    IrradiancePreset p;
    try {
      p.name = entry.at("name").get<std::string>();
      p.irradiance_w_m2_nm = entry.at("R_d0_w_m2_nm").get<double>();
      p.description = entry.value("description", "");
      p.source = entry.value("source", "");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string(source_name) + ": " + e.what());
    }
    if (!(p.irradiance_w_m2_nm > 0.0)) {
      throw ConfigError(std::string(source_name) + ": preset \"" + p.name +
                            "\" R_d0_w_m2_nm must be > 0",
                        "R_d0_w_m2_nm");
    }
    if (!seen.insert(p.name).second) {
      throw ConfigError(std::string(source_name) + ": duplicate preset \"" + p.name + "\"", "name");
    }
    catalog.presets_.push_back(std::move(p));
  }
  return catalog;
}

PresetCatalog PresetCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open preset file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

const PresetCatalog& PresetCatalog::builtin() {
  static const PresetCatalog catalog = parse(embedded_preset_json(), "builtin presets");
  return catalog;
}

const IrradiancePreset& PresetCatalog::find(std::string_view name) const {
  for (const auto& p : presets_) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets_) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset \"" + std::string(name) + "\" (known: " + known + ")",
                    "preset");
}

}  // namespace uwqkd
