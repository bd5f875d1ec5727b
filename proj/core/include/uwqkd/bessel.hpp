#pragma once

namespace uwqkd {

/// Bessel function of the first kind, order one.
///
/// Absolute error stays below 1e-10 for |x| <= 1e4 (power series for
/// |x| <= 8, normalised Miller recurrence up to 25, Hankel asymptotics
/// beyond).
double bessel_j1(double x);

namespace detail {

// Integer-order J_n from the same three regimes. Exposed for tests that check
// recurrence identities; n must be in [0, 8].
double bessel_jn(int n, double x);

double bessel_jn_series(int n, double x);
double bessel_jn_miller(int n, double x);
double bessel_jn_asymptotic(int n, double x);

}  // namespace detail
}  // namespace uwqkd
