#include "uwqkd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace uwqkd {
namespace {

// Abscissae and weights from QUADPACK's qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct LargerError {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const auto p = gauss_kronrod_15(f, a, b);
  return {a, b, p.kronrod, std::fabs(p.kronrod - p.gauss)};
}

}  // namespace

KronrodPanel gauss_kronrod_15(const std::function<double(double)>& f, double a,
                              double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {kronrod * half, gauss * half};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const AdaptiveQuadrature& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::size_t initial = 1;
  if (std::isfinite(options.max_panel_width) && options.max_panel_width > 0.0) {
    // strictly narrower than the cap
    initial = static_cast<std::size_t>(std::floor((b - a) / options.max_panel_width)) + 1;
  }

  std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
  double total_error = 0.0;
  const double width = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial) ? b : a + width * static_cast<double>(i + 1);
    Panel p = evaluate_panel(f, lo, hi);
    total_error += p.error;
    queue.push(p);
  }
  result.evaluations = 15 * initial;

  while (total_error > options.abs_tolerance) {
    if (result.evaluations + 30 > options.max_evaluations) break;
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // cannot split further
    queue.pop();
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    result.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum in position order so the result does not depend on heap layout.
  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  double sum = 0.0;
  double compensation = 0.0;
  double err = 0.0;
  for (const auto& p : panels) {
    const double t = sum + p.value;
    compensation += std::fabs(sum) >= std::fabs(p.value) ? (sum - t) + p.value
                                                         : (p.value - t) + sum;
    sum = t;
    err += p.error;
  }
  result.value = sum + compensation;
  result.abs_error = err;
  result.panels = panels.size();
  result.converged = err <= options.abs_tolerance;
  return result;
}

}  // namespace uwqkd
