#pragma once

#include <numbers>

namespace uwqkd {

inline constexpr double kPlanck = 6.62607015e-34;        // J s
inline constexpr double kSpeedOfLight = 299'792'458.0;   // m / s

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

constexpr double nm_to_m(double nm) { return nm * 1e-9; }

}  // namespace uwqkd
