#pragma once

#include <numbers>

namespace qdmc {

// User-facing rates are ordinary frequencies nu = rate/2pi in GHz; times are
// in ps. Internally everything is angular: omega [rad/ps] = 2pi * nu[GHz] * 1e-3.

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double angular_from_ghz(double nu_ghz) { return kTwoPi * nu_ghz * 1e-3; }
constexpr double ghz_from_angular(double omega) { return omega / (kTwoPi * 1e-3); }

}  // namespace qdmc
