#include <doctest.h>

#include <sstream>

#include "uwqkd/dataset.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/planner.hpp"
#include "uwqkd/presets.hpp"
#include "uwqkd/qber.hpp"

using namespace uwqkd;

namespace {

ChannelModel night_model() {
  ChannelModel m;
  m.system.surface_irradiance = PresetCatalog::builtin().find(kNightPreset).irradiance_si();
  return m;
}

void check_bracket(const ChannelModel& model, const DistanceResult& r, const SearchOptions& o) {
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.achievable_m == r.bracket_lo);
  CHECK(r.bracket_hi - r.bracket_lo <= o.resolution_m);
  CHECK(qber_upper_bound(model, LinkLayout(r.bracket_lo, r.relays)).qber_bound <= o.threshold);
  CHECK(qber_upper_bound(model, LinkLayout(r.bracket_hi, r.relays)).qber_bound > o.threshold);
}

}  // namespace

TEST_CASE("bracket invariant for every relay count") {
  const ChannelModel model = night_model();
  SearchOptions opts;
  for (int K = 0; K <= 5; ++K) check_bracket(model, achievable_distance(model, K, opts), opts);
  opts.resolution_m = 0.01;
  opts.threshold = 0.05;
  check_bracket(model, achievable_distance(model, 2, opts), opts);
}

TEST_CASE("night preset distances") {
  const ChannelModel model = night_model();
  CHECK(achievable_distance(model, 0).achievable_m == doctest::Approx(89.0).epsilon(0.06));
  CHECK(achievable_distance(model, 2).achievable_m == doctest::Approx(98.0).epsilon(0.06));
}

TEST_CASE("threshold one half never binds") {
  SearchOptions opts;
  opts.threshold = 0.5;
  opts.max_distance_m = 400.0;
  const auto r = achievable_distance(night_model(), 0, opts);
  CHECK(r.status == SearchStatus::unbounded);
  CHECK(r.bracket_lo == doctest::Approx(400.0));
}

TEST_CASE("infeasible threshold") {
  SearchOptions opts;
  opts.threshold = 1e-9;
  const auto r = achievable_distance(night_model(), 0, opts);
  CHECK(r.status == SearchStatus::infeasible);
  opts.threshold = 0.6;
  CHECK_THROWS_AS(achievable_distance(night_model(), 0, opts), DomainError);
}

TEST_CASE("optimum is monotone in the relay budget") {
  const ChannelModel model = night_model();
  double prev = 0.0;
  for (int kmax = 0; kmax <= 6; ++kmax) {
    const auto opt = optimal_relay_count(model, kmax, {}, 1);
    REQUIRE(opt.best_relays.has_value());
    CHECK(opt.failures.empty());
    CHECK(opt.achievable_m >= prev);
    prev = opt.achievable_m;
  }
}

TEST_CASE("parallel and serial sweeps produce identical bytes") {
  SweepSpec spec;
  spec.fixed = night_model();
  spec.label = "night";
  for (double L = 20.0; L <= 140.0; L += 20.0) spec.values.push_back(L);
  std::ostringstream serial, parallel;
  write_csv(run_sweep(spec, 1), serial);
  write_csv(run_sweep(spec, 4), parallel);
  CHECK(serial.str() == parallel.str());
  CHECK(serial.str().rfind("preset,L_m,K,qber_bound,h_hop,mu_hop", 0) == 0);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.values = {3.0, 2.0};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.values = {};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK(parse_sweep_variable("fov") == SweepVariable::fov);
  CHECK_THROWS_AS(parse_sweep_variable("depth"), ConfigError);
}

TEST_CASE("failed rows carry error sentinels") {
  SweepSpec spec;
  spec.fixed = night_model();
  spec.fixed.transfer.abs_tolerance = 1e-16;
  spec.fixed.transfer.max_evaluations = 100;
  spec.values = {50.0};
  spec.relays = {0};
  const Dataset data = run_sweep(spec, 1);
  REQUIRE(data.rows.size() == 1);
  CHECK(std::get<std::string>(data.rows[0][data.column("qber_bound")]) == "ERR:quadrature");
}
