#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "uwqkd/channel.hpp"
#include "uwqkd/errors.hpp"
#include "uwqkd/transfer.hpp"

using namespace uwqkd;

namespace {

// composite Simpson with std::cyl_bessel_j, independent of the adaptive engine
double simpson_oracle(double fresnel, const WaveStructureProfile* w, double d, int panels) {
  const double s = std::sqrt(fresnel);
  const auto f = [&](double x) {
    const double overlap = std::acos(x) - x * std::sqrt(1.0 - x * x);
    const double fade = w ? std::exp(-0.5 * (*w)(d * x)) : 1.0;
    return fade * overlap * std::cyl_bessel_j(1.0, 4.0 * x * s);
  };
  const double h = 1.0 / panels;
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 8.0 * s / std::numbers::pi * sum * h / 3.0;
}

}  // namespace

TEST_CASE("fresnel product") {
  CHECK(fresnel_product(0.05, 530e-9, 50.0) == doctest::Approx(5489.9454883240024).epsilon(1e-13));
  CHECK(fresnel_product(0.05 * std::sqrt(2.0), 530e-9, 50.0) ==
        doctest::Approx(4 * fresnel_product(0.05, 530e-9, 50.0)).epsilon(1e-13));
  CHECK_THROWS_AS(fresnel_product(0.05, 530e-9, 0.0), DomainError);
}

TEST_CASE("vacuum power transfer limits") {
  CHECK(vacuum_power_transfer(5e3).mu == doctest::Approx(0.99551422982869557).epsilon(1e-9));
  CHECK(vacuum_power_transfer(1e-6).mu == doctest::Approx(9.9999950000013889e-7).epsilon(1e-6));
  CHECK(vacuum_power_transfer(1.0).mu == doctest::Approx(0.61726141513332787).epsilon(1e-9));
  double prev = 0.0;
  for (double F = 1e-3; F < 2e4; F *= 1.7) {
    const double mu = vacuum_power_transfer(F).mu;
    CHECK(mu >= 0.0);
    CHECK(mu <= 1.0);
    CHECK(mu >= prev - 1e-9);
    prev = mu;
  }
}

TEST_CASE("turbulence off reduces to vacuum") {
  TurbulenceParams off;
  off.chi = 0.0;
  const TransferOptions opts;
  for (double l : {5.0, 30.0, 89.0, 150.0}) {
    const double F = fresnel_product(0.05, 530e-9, l);
    CHECK(std::abs(average_power_transfer(l, 0.05, 530e-9, off, opts).mu -
                   vacuum_power_transfer(F, opts).mu) <= 2 * opts.abs_tolerance);
  }
}

TEST_CASE("strong turbulence at 50 m against Simpson oracle") {
  TurbulenceParams turb;
  const auto r = average_power_transfer(50.0, 0.05, 530e-9, turb);
  CHECK(r.mu > 0.0);
  CHECK(r.mu < vacuum_power_transfer(r.fresnel).mu);
  CHECK(r.mu == doctest::Approx(0.23867840667188985).epsilon(1e-9));
  const auto w = wave_structure_profile(50.0, 530e-9, turb);
  CHECK(std::abs(r.mu - simpson_oracle(r.fresnel, &w, 0.05, 1'000'000)) < 1e-8);
}

TEST_CASE("golden mu versus distance") {
  std::ifstream in(UWQKD_TEST_DATA_DIR "/mu_vs_distance_golden.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  double prev = 2.0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    char comma;
    double l, mu0, mu1;
    ss >> l >> comma >> mu0 >> comma >> mu1;
    TurbulenceParams turb;
    turb.eddy_diffusivity_ratio = 0.0;
    const double got0 = average_power_transfer(l, 0.05, 530e-9, turb).mu;
    turb.eddy_diffusivity_ratio = 1.0;
    const double got1 = average_power_transfer(l, 0.05, 530e-9, turb).mu;
    INFO("l = " << l);
    CHECK(std::abs(got0 - mu0) < 1e-9);
    CHECK(std::abs(got1 - mu1) < 1e-9);
    CHECK(got0 < prev);
    prev = got0;
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("evaluation count grows with sqrt F") {
  TurbulenceParams off;
  off.chi = 0.0;
  const auto small = vacuum_power_transfer(1e3);
  const auto large = vacuum_power_transfer(1e5);
  CHECK(static_cast<double>(large.evaluations) >=
        std::sqrt(1e5 / 1e3) * static_cast<double>(small.evaluations) * 0.9);
}

TEST_CASE("turbulent mu stays below vacuum on a parameter grid") {
  for (double d : {0.05, 0.1, 0.2, 0.3}) {
    for (double l = 5.0; l <= 150.0; l += 15.0) {
      for (double dr : {0.0, 1.0}) {
        TurbulenceParams turb;
        turb.eddy_diffusivity_ratio = dr;
        const auto r = average_power_transfer(l, d, 530e-9, turb);
        CHECK(r.mu <= vacuum_power_transfer(r.fresnel).mu + 1e-6);
      }
    }
  }
}

TEST_CASE("convergence failure carries the estimate") {
  TransferOptions opts;
  opts.abs_tolerance = 1e-15;
  opts.max_evaluations = 300;
  try {
    vacuum_power_transfer(1e4, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.error_estimate() > 0.0);
  }
}
