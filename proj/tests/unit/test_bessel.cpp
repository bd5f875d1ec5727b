#include <doctest.h>

#include <cmath>
#include <random>

#include "uwqkd/bessel.hpp"

using uwqkd::bessel_j1;
namespace detail = uwqkd::detail;

TEST_CASE("j1 small arguments") {
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(bessel_j1(1e-8) == doctest::Approx(5e-9).epsilon(1e-14));
  CHECK(bessel_j1(1.0) == doctest::Approx(0.44005058574493351596).epsilon(1e-14));
}

TEST_CASE("j1 first zero") {
  const double zero = 3.8317059702075123156;
  CHECK(std::abs(bessel_j1(zero)) < 1e-9);
  // Newton from a nearby guess lands on the zero
  double x = 3.8;
  for (int i = 0; i < 20; ++i) {
    const double j1 = bessel_j1(x);
    const double dj1 = detail::bessel_jn(0, x) - j1 / x;
    x -= j1 / dj1;
  }
  CHECK(std::abs(x - zero) < 1e-9);
}

TEST_CASE("j1 is odd") {
  for (double x : {0.3, 2.0, 7.9, 8.1, 24.0, 26.0, 300.0}) {
    CHECK(bessel_j1(-x) == -bessel_j1(x));
  }
}

TEST_CASE("recurrence J0 + J2 = 2 J1 / x") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 400.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double lhs = detail::bessel_jn(0, x) + detail::bessel_jn(2, x);
    CHECK(std::abs(lhs - 2.0 * bessel_j1(x) / x) < 1e-9);
  }
}

TEST_CASE("agrees with libstdc++ cyl_bessel_j") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logx(-4.0, 4.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = std::pow(10.0, logx(rng));
    INFO("x = " << x);
    CHECK(std::abs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)) < 1e-10);
  }
}

TEST_CASE("regimes agree at their seams") {
  for (int n = 0; n <= 2; ++n) {
    CHECK(detail::bessel_jn_series(n, 8.0) ==
          doctest::Approx(detail::bessel_jn_miller(n, 8.0)).epsilon(1e-11));
    CHECK(std::abs(detail::bessel_jn_miller(n, 25.0) - detail::bessel_jn_asymptotic(n, 25.0)) <
          1e-11);
  }
}
