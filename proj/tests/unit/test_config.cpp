#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uwqkd/config.hpp"
#include "uwqkd/errors.hpp"

using namespace uwqkd;

TEST_CASE("empty config yields table defaults") {
  const RunConfig c = parse_config("");
  CHECK(c == RunConfig{});
  CHECK(parse_config("{}") == RunConfig{});
  const ChannelModel m = c.channel_model();
  CHECK(m.water.extinction_per_m == 0.151);
  CHECK(m.water.diffuse_atten_per_m == 0.08);
  CHECK(m.system.aperture_diameter_m == 0.05);
  CHECK(m.system.divergence_rad == doctest::Approx(6.0 * std::numbers::pi / 180).epsilon(1e-15));
  CHECK(m.system.fov_rad == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  CHECK(m.system.filter_width_m == doctest::Approx(30e-9).epsilon(1e-15));
  CHECK(m.system.bit_period_s == doctest::Approx(35e-9).epsilon(1e-15));
  CHECK(m.system.gate_time_s == doctest::Approx(200e-12).epsilon(1e-15));
  CHECK(m.system.quantum_efficiency == 0.5);
  CHECK(m.system.dark_count_rate_hz == 60.0);
  CHECK(m.system.depth_m == 100.0);
  CHECK(m.system.surface_irradiance > 0.0);
}

TEST_CASE("invariant violations name the field and bound") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"system": {"quantum_efficiency": 1.5}})"),
                       doctest::Contains("quantum efficiency ∈ (0,1]"), ConfigError);
  try {
    parse_config(R"({"system": {"quantum_efficiency": 1.5}})");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("system.quantum_efficiency") != std::string::npos);
  }
}

TEST_CASE("strict parsing rejects unknown keys") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"system": {"fov_deg_typo": 10}})"),
                       doctest::Contains("fov_deg_typo"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sytem": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {"fov_deg": "wide"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"preset": "polar_night"})"), ConfigError);
}

TEST_CASE("serialize round trip") {
  RunConfig c;
  c.preset = std::string(kDayPreset);
  c.system.fov_deg = 60.0;
  c.system.surface_irradiance_w_m2_nm = 2e-9;
  c.turbulence.eddy_diffusivity_ratio = 1.0;
  c.layout = {120.0, 3};
  c.numerics.resolution_m = 0.05;
  c.output.format = "jsonl";
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));
}

TEST_CASE("figure sweeps") {
  const RunConfig base;
  CHECK(is_figure_name("fig3"));
  CHECK_FALSE(is_figure_name("fig6"));
  const auto fig2 = figure_sweeps("fig2", base);
  REQUIRE(fig2.size() == 1);
  CHECK_FALSE(fig2[0].fixed.turbulence.enabled());
  CHECK(fig2[0].values == figure_distance_grid());
  CHECK(fig2[0].relays == std::vector<int>{0, 1, 2});
  const auto fig4 = figure_sweeps("fig4", base);
  CHECK(fig4.size() == 2);
  CHECK(fig4[0].variable == SweepVariable::fov);
  CHECK_THROWS_AS(figure_sweeps("fig9", base), ConfigError);
}
