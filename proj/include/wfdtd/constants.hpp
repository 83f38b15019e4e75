#pragma once

#include <cmath>

namespace wfdtd {

// CODATA SI values.
inline constexpr double kEps0 = 8.8541878128e-12;  // F/m
inline constexpr double kMu0 = 1.25663706212e-6;   // H/m

inline double speed_of_light() {
    static const double c0 = 1.0 / std::sqrt(kMu0 * kEps0);
    return c0;
}

inline double free_space_impedance() {
    static const double eta0 = std::sqrt(kMu0 / kEps0);
    return eta0;
}

}  // namespace wfdtd
