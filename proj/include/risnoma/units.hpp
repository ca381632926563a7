#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risnoma {

// Decibel helpers. Powers configured in dBm are converted with the same
// 10^(x/10) rule as dB values; every quantity that matters downstream is a
// ratio of two such conversions, so the reference level cancels.
inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

inline double lin_to_db(double lin) {
    if (lin <= 0.0) throw std::domain_error("lin_to_db: non-positive value");
    return 10.0 * std::log10(lin);
}

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

} // namespace risnoma
