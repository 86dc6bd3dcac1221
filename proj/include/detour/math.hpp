#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace detour {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;
inline constexpr double kSecondsPerDay = 86400.0;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return n > 0.0 ? *this / n : Vec3{};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Wrap an angle to [0, 2*pi).
inline double wrap_two_pi(double angle) {
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

/// Wrap an angle to (-pi, pi].
inline double wrap_pi(double angle) {
    double w = wrap_two_pi(angle);
    return w > kPi ? w - kTwoPi : w;
}

/// Shortest angular distance (minor arc), always in [0, pi].
inline double minor_arc(double a, double b) {
    return std::acos(std::clamp(std::cos(a - b), -1.0, 1.0));
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline int sgn(double v) { return (v > 0.0) - (v < 0.0); }

/// Kepler's equation M = E - e sin(E), solved by Newton iteration.
inline double eccentric_from_mean(double mean_anomaly, double e) {
    double m = wrap_pi(mean_anomaly);
    double ea = (e < 0.8) ? m : kPi * sgn(m);
    if (ea == 0.0) ea = m;
    for (int iter = 0; iter < 50; ++iter) {
        double f = ea - e * std::sin(ea) - m;
        double fp = 1.0 - e * std::cos(ea);
        double step = f / fp;
        ea -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return ea;
}

inline double true_from_eccentric(double ea, double e) {
    double beta = std::sqrt((1.0 + e) / (1.0 - e));
    return 2.0 * std::atan(beta * std::tan(0.5 * ea));
}

inline double eccentric_from_true(double nu, double e) {
    double beta = std::sqrt((1.0 - e) / (1.0 + e));
    return 2.0 * std::atan(beta * std::tan(0.5 * nu));
}

inline double mean_from_eccentric(double ea, double e) {
    return ea - e * std::sin(ea);
}

inline double true_from_mean(double m, double e) {
    return true_from_eccentric(eccentric_from_mean(m, e), e);
}

inline double mean_from_true(double nu, double e) {
    return mean_from_eccentric(eccentric_from_true(nu, e), e);
}

}  // namespace detour
