#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace uwqkd {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;        // sum of per-panel |K15 - G7|
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

struct AdaptiveQuadrature {
  double abs_tolerance = 1e-10;
  // Every panel of the initial partition is narrower than this.
  double max_panel_width = std::numeric_limits<double>::infinity();
  std::size_t max_evaluations = 4'000'000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `abs_tolerance` or the evaluation budget runs out
/// (reported through `converged`, never thrown).
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const AdaptiveQuadrature& options = {});

/// Single 15-point Kronrod panel with its embedded 7-point Gauss estimate.
struct KronrodPanel {
  double kronrod = 0.0;
  double gauss = 0.0;
};
KronrodPanel gauss_kronrod_15(const std::function<double(double)>& f, double a,
                              double b);

}  // namespace uwqkd
