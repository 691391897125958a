#pragma once

#include <cmath>
#include <numbers>

namespace encharm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [-pi, pi).
inline double wrap_phase(double x) {
    if (x >= -kPi && x < kPi) return x;
    double r = std::fmod(x + kPi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    r -= kPi;
    // fmod can land exactly on +pi after the shift back
    return r >= kPi ? r - kTwoPi : r;
}

inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }
inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

}  // namespace encharm
