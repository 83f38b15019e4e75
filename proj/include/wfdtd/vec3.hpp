#pragma once

#include <array>
#include <cmath>

namespace wfdtd {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    return {a[0] / n, a[1] / n, a[2] / n};
}

// Deterministic right-handed frame (u, v, w) with w = normalized(axis).
// Picks the seed axis least aligned with w so the frame is well conditioned.
inline std::array<Vec3, 3> orthonormal_frame(const Vec3& axis) {
    const Vec3 w = normalized(axis);
    Vec3 seed = {1.0, 0.0, 0.0};
    double best = std::abs(w[0]);
    if (std::abs(w[1]) < best) {
        seed = {0.0, 1.0, 0.0};
        best = std::abs(w[1]);
    }
    if (std::abs(w[2]) < best) seed = {0.0, 0.0, 1.0};
    const Vec3 u = normalized(cross(seed, w));
    const Vec3 v = cross(w, u);
    return {u, v, w};
}

}  // namespace wfdtd
