#include "uwqkd/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uwqkd {
namespace detail {
namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kMillerLimit = 25.0;

double parity_sign(int n, double x) { return (x < 0.0 && (n % 2) != 0) ? -1.0 : 1.0; }

}  // namespace

double bessel_jn_series(int n, double x) {
  const double half = 0.5 * std::fabs(x);
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return parity_sign(n, x) * sum;
}

double bessel_jn_miller(int n, double x) {
  const double ax = std::fabs(x);
  if (ax == 0.0) return n == 0 ? 1.0 : 0.0;
  int top = static_cast<int>(std::max<double>(n, ax) + 20.0 + std::sqrt(40.0 * ax));
  top += top % 2;  // normalisation sum runs over even orders

  // top stays below 80 inside the Miller range
  std::array<double, 128> j{};
  if (top + 2 > static_cast<int>(j.size())) return bessel_jn_asymptotic(n, x);
  j[top] = 1e-30;
  const double two_over_x = 2.0 / ax;
  for (int k = top; k >= 1; --k) {
    j[k - 1] = k * two_over_x * j[k] - j[k + 1];
    if (std::fabs(j[k - 1]) > 1e250) {
      for (int m = k - 1; m <= top; ++m) j[m] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= top; k += 2) norm += 2.0 * j[k];
  return parity_sign(n, x) * j[n] / norm;
}

double bessel_jn_asymptotic(int n, double x) {
  const double ax = std::fabs(x);
  const double mu = 4.0 * n * n;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * ax);
    const double t = std::fabs(term);
    if (t > prev_abs) break;  // asymptotic series started to diverge
    prev_abs = t;
    // signs follow +t0, +t1, -t2, -t3, +t4, ...
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (t < 1e-17) break;
  }
  const double phase = (0.5 * n + 0.25) * std::numbers::pi;
  const double c = std::cos(ax) * std::cos(phase) + std::sin(ax) * std::sin(phase);
  const double s = std::sin(ax) * std::cos(phase) - std::cos(ax) * std::sin(phase);
  const double amp = std::sqrt(2.0 / (std::numbers::pi * ax));
  return parity_sign(n, x) * amp * (p * c - q * s);
}

double bessel_jn(int n, double x) {
  if (n < 0 || n > 8) throw std::out_of_range("bessel_jn: order must be in [0, 8]");
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return bessel_jn_series(n, x);
  if (ax <= kMillerLimit) return bessel_jn_miller(n, x);
  return bessel_jn_asymptotic(n, x);
}

}  // namespace detail

double bessel_j1(double x) { return detail::bessel_jn(1, x); }

}  // namespace uwqkd
