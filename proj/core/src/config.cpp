#include "uwqkd/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uwqkd/errors.hpp"
#include "uwqkd/units.hpp"

namespace uwqkd {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads one JSON object, remembering which keys were used so the rest can be
// rejected.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path, std::string_view source)
      : node_(node), path_(std::move(path)), source_(source) {
    if (!node_.is_object()) fail(path_.empty() ? "document" : path_, "expected an object");
  }

  void number(const char* key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) fail(field(key), "expected a number");
      out = v->get<double>();
    }
  }

  void optional_number(const char* key, std::optional<double>& out) {
    if (const json* v = take(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number()) fail(field(key), "expected a number or null");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer()) fail(field(key), "expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->get<long long>() < 0) fail(field(key), "expected a nonnegative integer");
      }
      out = v->get<Int>();
    }
  }

  void text(const char* key, std::string& out) {
    if (const json* v = take(key)) {
      if (!v->is_string()) fail(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  const json* child(const char* key) { return take(key); }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [key, _] : node_.items()) {
      if (!used_.contains(key)) {
        const std::string name = path_.empty() ? key : path_ + "." + key;
        throw ConfigError(std::string(source_) + ": unknown key \"" + name + "\"", name);
      }
    }
  }

  [[noreturn]] void fail(const std::string& name, const std::string& what) const {
    throw ConfigError(std::string(source_) + ": " + name + ": " + what, name);
  }

 private:
  const json* take(const char* key) {
    used_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  const json& node_;
  std::string path_;
  std::string_view source_;
  std::set<std::string> used_;
};

void read_system(ObjectReader& r, SystemConfig& s) {
  r.number("wavelength_nm", s.wavelength_nm);
  r.number("aperture_diameter_m", s.aperture_diameter_m);
  r.number("divergence_deg", s.divergence_deg);
  r.number("fov_deg", s.fov_deg);
  r.number("filter_width_nm", s.filter_width_nm);
  r.number("bit_period_ns", s.bit_period_ns);
  r.number("gate_time_ps", s.gate_time_ps);
  r.number("quantum_efficiency", s.quantum_efficiency);
  r.number("dark_count_rate_hz", s.dark_count_rate_hz);
  r.number("mean_photon_number", s.mean_photon_number);
  r.number("depth_m", s.depth_m);
  r.optional_number("surface_irradiance_w_m2_nm", s.surface_irradiance_w_m2_nm);
  r.finish();
}

void read_water(ObjectReader& r, WaterConfig& w, std::string_view source) {
  r.number("extinction_coeff_per_m", w.extinction_per_m);
  r.number("diffuse_atten_per_m", w.diffuse_atten_per_m);
  if (const json* table = r.child("correction_table")) {
    const std::string name = r.field("correction_table");
    if (!table->is_array()) r.fail(name, "expected an array");
    w.correction_table.clear();
    for (std::size_t i = 0; i < table->size(); ++i) {
      ObjectReader row((*table)[i], name + "[" + std::to_string(i) + "]", source);
      CorrectionRow c;
      row.number("divergence_deg", c.divergence_deg);
      row.number("diameter_m", c.diameter_m);
      row.number("T", c.coefficient);
      row.finish();
      w.correction_table.push_back(c);
    }
  }
  r.finish();
}

void read_turbulence(ObjectReader& r, TurbulenceParams& t) {
  r.number("omega", t.omega);
  r.number("epsilon", t.epsilon);
  r.number("chi", t.chi);
  r.number("alpha", t.thermal_expansion);
  r.number("nu", t.viscosity);
  r.number("d_r", t.eddy_diffusivity_ratio);
  r.finish();
}

void read_numerics(ObjectReader& r, NumericsConfig& n) {
  r.number("tolerance", n.tolerance);
  r.integer("max_evaluations", n.max_evaluations);
  r.number("threshold", n.threshold);
  r.number("resolution_m", n.resolution_m);
  r.number("start_distance_m", n.start_distance_m);
  r.number("max_distance_m", n.max_distance_m);
  r.integer("max_relays", n.max_relays);
  r.integer("threads", n.threads);
  r.finish();
}

RunConfig read_document(const json& doc, std::string_view source) {
  RunConfig config;
  ObjectReader top(doc, "", source);
  top.text("preset", config.preset);
  if (const json* node = top.child("system")) {
    ObjectReader r(*node, "system", source);
    read_system(r, config.system);
  }
  if (const json* node = top.child("water")) {
    ObjectReader r(*node, "water", source);
    read_water(r, config.water, source);
  }
  if (const json* node = top.child("turbulence")) {
    ObjectReader r(*node, "turbulence", source);
    read_turbulence(r, config.turbulence);
  }
  if (const json* node = top.child("layout")) {
    ObjectReader r(*node, "layout", source);
    r.number("distance_m", config.layout.distance_m);
    r.integer("relays", config.layout.relays);
    r.finish();
  }
  if (const json* node = top.child("numerics")) {
    ObjectReader r(*node, "numerics", source);
    read_numerics(r, config.numerics);
  }
  if (const json* node = top.child("output")) {
    ObjectReader r(*node, "output", source);
    r.text("path", config.output.path);
    r.text("format", config.output.format);
    r.finish();
  }
  top.finish();
  return config;
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries "line L, column C" for syntax errors
    throw ConfigError(std::string(source) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void check(bool ok, const std::string& field, const std::string& bound, double value) {
  if (ok) return;
  std::ostringstream os;
  os << "invalid configuration: " << field << " = " << value << " violates " << bound;
  throw ConfigError(os.str(), field);
}

std::vector<int> relay_range(int max_relays) {
  std::vector<int> out;
  for (int k = 0; k <= max_relays; ++k) out.push_back(k);
  return out;
}

SweepSpec base_sweep(const RunConfig& config, const PresetCatalog& catalog) {
  SweepSpec spec;
  spec.fixed = config.channel_model(catalog);
  spec.label = config.preset;
  spec.search = config.search_options();
  return spec;
}

}  // namespace

ChannelModel RunConfig::channel_model(const PresetCatalog& catalog) const {
  ChannelModel m;
  m.system.wavelength_m = nm_to_m(system.wavelength_nm);
  m.system.aperture_diameter_m = system.aperture_diameter_m;
  m.system.divergence_rad = deg_to_rad(system.divergence_deg);
  m.system.fov_rad = deg_to_rad(system.fov_deg);
  m.system.filter_width_m = nm_to_m(system.filter_width_nm);
  m.system.bit_period_s = system.bit_period_ns * 1e-9;
  m.system.gate_time_s = system.gate_time_ps * 1e-12;
  m.system.quantum_efficiency = system.quantum_efficiency;
  m.system.dark_count_rate_hz = system.dark_count_rate_hz;
  m.system.mean_photon_number = system.mean_photon_number;
  m.system.depth_m = system.depth_m;
  m.system.surface_irradiance = system.surface_irradiance_w_m2_nm
                                    ? *system.surface_irradiance_w_m2_nm * 1e9
                                    : catalog.find(preset).irradiance_si();

  m.water.extinction_per_m = water.extinction_per_m;
  m.water.diffuse_atten_per_m = water.diffuse_atten_per_m;
  m.water.correction_table.clear();
  for (const auto& row : water.correction_table) {
    m.water.correction_table.push_back(
        {deg_to_rad(row.divergence_deg), row.diameter_m, row.coefficient});
  }
  m.turbulence = turbulence;
  m.transfer.abs_tolerance = numerics.tolerance;
  m.transfer.max_evaluations = numerics.max_evaluations;
  return m;
}

SearchOptions RunConfig::search_options() const {
  SearchOptions options;
  options.threshold = numerics.threshold;
  options.resolution_m = numerics.resolution_m;
  options.start_distance_m = numerics.start_distance_m;
  options.max_distance_m = numerics.max_distance_m;
  return options;
}

void validate_config(const RunConfig& c, const PresetCatalog& catalog) {
  const auto& s = c.system;
  check(s.wavelength_nm > 0.0, "system.wavelength_nm", "wavelength > 0", s.wavelength_nm);
  check(s.aperture_diameter_m > 0.0, "system.aperture_diameter_m", "aperture diameter > 0",
        s.aperture_diameter_m);
  check(s.divergence_deg > 0.0 && s.divergence_deg < 180.0, "system.divergence_deg",
        "beam divergence ∈ (0,180) deg", s.divergence_deg);
  check(s.fov_deg > 0.0 && s.fov_deg <= 180.0, "system.fov_deg", "field of view Ω ∈ (0,180] deg",
        s.fov_deg);
  check(s.filter_width_nm > 0.0, "system.filter_width_nm", "filter width > 0", s.filter_width_nm);
  check(s.bit_period_ns > 0.0, "system.bit_period_ns", "bit period > 0", s.bit_period_ns);
  check(s.gate_time_ps > 0.0, "system.gate_time_ps", "gate time > 0", s.gate_time_ps);
  check(s.quantum_efficiency > 0.0 && s.quantum_efficiency <= 1.0, "system.quantum_efficiency",
        "quantum efficiency ∈ (0,1]", s.quantum_efficiency);
  check(s.dark_count_rate_hz > 0.0, "system.dark_count_rate_hz", "dark count rate > 0",
        s.dark_count_rate_hz);
  check(s.mean_photon_number > 0.0, "system.mean_photon_number", "mean photon number > 0",
        s.mean_photon_number);
  check(s.depth_m >= 0.0, "system.depth_m", "depth >= 0", s.depth_m);
  if (s.surface_irradiance_w_m2_nm) {
    check(*s.surface_irradiance_w_m2_nm > 0.0, "system.surface_irradiance_w_m2_nm",
          "surface irradiance > 0", *s.surface_irradiance_w_m2_nm);
  } else {
    catalog.find(c.preset);
  }

  const auto& w = c.water;
  check(w.extinction_per_m > 0.0, "water.extinction_coeff_per_m", "extinction coefficient > 0",
        w.extinction_per_m);
  check(w.diffuse_atten_per_m >= 0.0, "water.diffuse_atten_per_m", "diffuse attenuation >= 0",
        w.diffuse_atten_per_m);
  if (w.correction_table.empty()) {
    throw ConfigError("invalid configuration: water.correction_table must not be empty",
                      "water.correction_table");
  }
  for (std::size_t i = 0; i < w.correction_table.size(); ++i) {
    const auto& row = w.correction_table[i];
    const std::string name = "water.correction_table[" + std::to_string(i) + "]";
    check(row.coefficient > 0.0 && row.coefficient < 1.0, name + ".T",
          "correction coefficient T ∈ (0,1)", row.coefficient);
    check(row.divergence_deg > 0.0, name + ".divergence_deg", "divergence > 0",
          row.divergence_deg);
    check(row.diameter_m > 0.0, name + ".diameter_m", "diameter > 0", row.diameter_m);
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = w.correction_table[j];
      if (other.divergence_deg == row.divergence_deg && other.diameter_m == row.diameter_m) {
        throw ConfigError("invalid configuration: " + name + " duplicates an earlier (θ, d) row",
                          name);
      }
    }
  }

  const auto& t = c.turbulence;
  check(t.epsilon > 0.0, "turbulence.epsilon", "ε > 0", t.epsilon);
  check(t.chi >= 0.0, "turbulence.chi", "χ >= 0", t.chi);
  check(t.viscosity > 0.0, "turbulence.nu", "kinematic viscosity > 0", t.viscosity);
  check(t.omega != 0.0, "turbulence.omega", "ω ≠ 0", t.omega);
  check(std::isfinite(t.thermal_expansion), "turbulence.alpha", "finite α", t.thermal_expansion);
  check(std::isfinite(t.eddy_diffusivity_ratio), "turbulence.d_r", "finite d_r",
        t.eddy_diffusivity_ratio);

  check(c.layout.distance_m > 0.0, "layout.distance_m", "distance > 0", c.layout.distance_m);
  check(c.layout.relays >= 0, "layout.relays", "relay count >= 0", c.layout.relays);

  const auto& n = c.numerics;
  check(n.tolerance > 0.0, "numerics.tolerance", "tolerance > 0", n.tolerance);
  check(n.max_evaluations >= 1000, "numerics.max_evaluations", "max evaluations >= 1000",
        static_cast<double>(n.max_evaluations));
  check(n.threshold > 0.0 && n.threshold < 0.5, "numerics.threshold", "threshold ∈ (0,0.5)",
        n.threshold);
  check(n.resolution_m > 0.0, "numerics.resolution_m", "resolution > 0", n.resolution_m);
  check(n.start_distance_m > 0.0, "numerics.start_distance_m", "start distance > 0",
        n.start_distance_m);
  check(n.max_distance_m > n.start_distance_m, "numerics.max_distance_m",
        "max distance > start distance", n.max_distance_m);
  check(n.max_relays >= 0, "numerics.max_relays", "max relays >= 0", n.max_relays);

  parse_output_format(c.output.format);

  try {
    correction_coefficient(deg_to_rad(s.divergence_deg), s.aperture_diameter_m,
                           c.channel_model(catalog).water);
  } catch (const NoCorrectionData& e) {
    throw ConfigError(std::string("invalid configuration: system.aperture_diameter_m: ") + e.what(),
                      "system.aperture_diameter_m");
  }
}

RunConfig parse_config(std::string_view text, std::string_view source,
                       const PresetCatalog& catalog) {
  const std::string_view trimmed =
      text.find_first_not_of(" \t\r\n") == std::string_view::npos ? std::string_view{} : text;
  RunConfig config = trimmed.empty() ? RunConfig{} : read_document(parse_json(text, source), source);
  validate_config(config, catalog);
  return config;
}

RunConfig load_config(const std::string& path, const PresetCatalog& catalog) {
  return parse_config(read_file(path), path, catalog);
}

std::string serialize_config(const RunConfig& c) {
  ordered_json doc;
  doc["preset"] = c.preset;
  auto& s = doc["system"];
  s["wavelength_nm"] = c.system.wavelength_nm;
  s["aperture_diameter_m"] = c.system.aperture_diameter_m;
  s["divergence_deg"] = c.system.divergence_deg;
  s["fov_deg"] = c.system.fov_deg;
  s["filter_width_nm"] = c.system.filter_width_nm;
  s["bit_period_ns"] = c.system.bit_period_ns;
  s["gate_time_ps"] = c.system.gate_time_ps;
  s["quantum_efficiency"] = c.system.quantum_efficiency;
  s["dark_count_rate_hz"] = c.system.dark_count_rate_hz;
  s["mean_photon_number"] = c.system.mean_photon_number;
  s["depth_m"] = c.system.depth_m;
  s["surface_irradiance_w_m2_nm"] = c.system.surface_irradiance_w_m2_nm
                                        ? ordered_json(*c.system.surface_irradiance_w_m2_nm)
                                        : ordered_json(nullptr);
  auto& w = doc["water"];
  w["extinction_coeff_per_m"] = c.water.extinction_per_m;
  w["diffuse_atten_per_m"] = c.water.diffuse_atten_per_m;
  w["correction_table"] = ordered_json::array();
  for (const auto& row : c.water.correction_table) {
    w["correction_table"].push_back(
        {{"divergence_deg", row.divergence_deg}, {"diameter_m", row.diameter_m}, {"T", row.coefficient}});
  }
  auto& t = doc["turbulence"];
  t["omega"] = c.turbulence.omega;
  t["epsilon"] = c.turbulence.epsilon;
  t["chi"] = c.turbulence.chi;
  t["alpha"] = c.turbulence.thermal_expansion;
  t["nu"] = c.turbulence.viscosity;
  t["d_r"] = c.turbulence.eddy_diffusivity_ratio;
  doc["layout"] = {{"distance_m", c.layout.distance_m}, {"relays", c.layout.relays}};
  auto& n = doc["numerics"];
  n["tolerance"] = c.numerics.tolerance;
  n["max_evaluations"] = c.numerics.max_evaluations;
  n["threshold"] = c.numerics.threshold;
  n["resolution_m"] = c.numerics.resolution_m;
  n["start_distance_m"] = c.numerics.start_distance_m;
  n["max_distance_m"] = c.numerics.max_distance_m;
  n["max_relays"] = c.numerics.max_relays;
  n["threads"] = c.numerics.threads;
  doc["output"] = {{"path", c.output.path}, {"format", c.output.format}};
  return doc.dump(2) + "\n";
}

std::vector<double> figure_distance_grid() {
  std::vector<double> grid;
  for (int L = 10; L <= 150; ++L) grid.push_back(L);
  return grid;
}

bool is_figure_name(std::string_view name) {
  return name == "fig2" || name == "fig3" || name == "fig4" || name == "fig5";
}

std::vector<SweepSpec> figure_sweeps(std::string_view name, const RunConfig& base,
                                     const PresetCatalog& catalog) {
  RunConfig night = base;
  night.preset = std::string(kNightPreset);
  night.system.surface_irradiance_w_m2_nm.reset();

  if (name == "fig2" || name == "fig3") {
    if (name == "fig2") night.turbulence.chi = 0.0;
    SweepSpec spec = base_sweep(night, catalog);
    spec.variable = SweepVariable::distance;
    spec.values = figure_distance_grid();
    spec.relays = {0, 1, 2};
    return {spec};
  }
  if (name == "fig4") {
    RunConfig day = night;
    day.preset = std::string(kDayPreset);
    std::vector<SweepSpec> specs;
    for (const RunConfig* cfg : {&night, &day}) {
      SweepSpec spec = base_sweep(*cfg, catalog);
      spec.variable = SweepVariable::fov;
      spec.values = {10.0, 60.0, 180.0};
      spec.relays = relay_range(base.numerics.max_relays);
      specs.push_back(spec);
    }
    return specs;
  }
  if (name == "fig5") {
    SweepSpec spec = base_sweep(night, catalog);
    spec.variable = SweepVariable::aperture;
    spec.values = {0.05, 0.10, 0.20, 0.30};
    spec.relays = relay_range(base.numerics.max_relays);
    return {spec};
  }
  throw ConfigError("unknown figure \"" + std::string(name) + "\" (expected fig2|fig3|fig4|fig5)",
                    "figure");
}

std::vector<SweepSpec> load_sweep_file(const std::string& path, const RunConfig& base,
                                       const PresetCatalog& catalog) {
  const json doc = parse_json(read_file(path), path);
  ObjectReader r(doc, "", path);
  RunConfig config = base;
  if (const json* node = r.child("config")) {
    config = read_document(*node, path);
  }
  r.text("preset", config.preset);
  r.number("threshold", config.numerics.threshold);
  validate_config(config, catalog);

  SweepSpec spec = base_sweep(config, catalog);
  std::string variable = "distance";
  r.text("variable", variable);
  spec.variable = parse_sweep_variable(variable);
  if (const json* values = r.child("values")) {
    if (!values->is_array()) r.fail("values", "expected an array of numbers");
    for (const auto& v : *values) {
      if (!v.is_number()) r.fail("values", "expected an array of numbers");
      spec.values.push_back(v.get<double>());
    }
  }
  if (const json* relays = r.child("relays")) {
    if (!relays->is_array()) r.fail("relays", "expected an array of integers");
    spec.relays.clear();
    for (const auto& v : *relays) {
      if (!v.is_number_integer()) r.fail("relays", "expected an array of integers");
      spec.relays.push_back(v.get<int>());
    }
  }
  r.finish();
  spec.validate();
  return {spec};
}

}  // namespace uwqkd
