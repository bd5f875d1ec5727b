#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uwqkd/quadrature.hpp"

using namespace uwqkd;

TEST_CASE("kronrod rule is exact for degree 22 polynomials") {
  const auto p = [](double x) { return std::pow(x, 22) - 3.0 * std::pow(x, 7) + 1.0; };
  const auto panel = gauss_kronrod_15(p, -1.0, 2.0);
  const double exact = (std::pow(2.0, 23) + 1.0) / 23.0 - 3.0 * (256.0 - 1.0) / 8.0 + 3.0;
  CHECK(panel.kronrod == doctest::Approx(exact).epsilon(1e-13));
}

TEST_CASE("adaptive integration of smooth and oscillatory functions") {
  auto r = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 0.5 * std::sqrt(std::numbers::pi) * std::erf(3.0)) < 1e-12);

  r = integrate([](double x) { return std::sin(400.0 * x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - (1.0 - std::cos(400.0)) / 400.0) < 1e-10);
}

TEST_CASE("endpoint singularity of sqrt type") {
  const auto r = integrate([](double x) { return std::sqrt(1.0 - x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-10);
}

TEST_CASE("panel width cap is respected") {
  AdaptiveQuadrature opts;
  opts.max_panel_width = 0.01;
  const auto r = integrate([](double) { return 1.0; }, 0.0, 1.0, opts);
  CHECK(r.panels >= 100);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("budget exhaustion is reported") {
  AdaptiveQuadrature opts;
  opts.abs_tolerance = 1e-15;
  opts.max_evaluations = 200;
  const auto r = integrate([](double x) { return std::sin(1e4 * x); }, 0.0, 1.0, opts);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations <= 200 + 30);
}
