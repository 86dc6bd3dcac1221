#pragma once

#include <cmath>
#include <stdexcept>

#include "detour/math.hpp"

namespace detour {

/// Classical Keplerian element set. Angles in radians, lengths in km,
/// epoch in seconds since J2000. May hold osculating or mean elements;
/// which one is a matter of context.
struct ClassicalElements {
    double a = 0.0;      ///< semi-major axis [km]
    double e = 0.0;      ///< eccentricity
    double i = 0.0;      ///< inclination [rad]
    double raan = 0.0;   ///< right ascension of ascending node [rad]
    double argp = 0.0;   ///< argument of perigee [rad]
    double nu = 0.0;     ///< true anomaly [rad]
    double epoch = 0.0;  ///< [s since J2000]

    double semilatus(double /*mu*/ = 0.0) const { return a * (1.0 - e * e); }
    double radius() const {
        return semilatus() / (1.0 + e * std::cos(nu));
    }
    double arglat() const { return wrap_two_pi(argp + nu); }

    ClassicalElements normalized() const {
        ClassicalElements el = *this;
        el.raan = wrap_two_pi(el.raan);
        el.argp = wrap_two_pi(el.argp);
        el.nu = wrap_two_pi(el.nu);
        return el;
    }
};

struct CartesianState {
    Vec3 position;  ///< [km]
    Vec3 velocity;  ///< [km/s]
    double epoch = 0.0;
};

struct SpacecraftConfig {
    double wet_mass = 800.0;      ///< [kg]
    double dry_mass = 500.0;      ///< [kg] abort floor for propagation
    double max_thrust = 0.06;     ///< [N]
    double isp = 1300.0;          ///< [s]
    double duty_ratio = 0.5;      ///< fraction of each orbit thrust may fire
    double drag_coefficient = 2.2;
    double frontal_area = 2.0;    ///< [m^2]

    double exhaust_velocity_kms(double g0 = 9.80665) const {
        return isp * g0 / 1000.0;
    }
};

inline double circular_speed(double mu, double a) { return std::sqrt(mu / a); }

/// Two-body conversion elements -> inertial Cartesian state.
inline CartesianState elements_to_cartesian(const ClassicalElements& el, double mu) {
    const double p = el.a * (1.0 - el.e * el.e);
    const double r = p / (1.0 + el.e * std::cos(el.nu));
    const double h = std::sqrt(mu * p);

    const double cn = std::cos(el.nu), sn = std::sin(el.nu);
    // Perifocal position/velocity.
    Vec3 r_pf{r * cn, r * sn, 0.0};
    Vec3 v_pf{-mu / h * sn, mu / h * (el.e + cn), 0.0};

    const double cO = std::cos(el.raan), sO = std::sin(el.raan);
    const double ci = std::cos(el.i), si = std::sin(el.i);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);

    auto rotate = [&](const Vec3& v) {
        return Vec3{
            (cO * cw - sO * sw * ci) * v.x + (-cO * sw - sO * cw * ci) * v.y,
            (sO * cw + cO * sw * ci) * v.x + (-sO * sw + cO * cw * ci) * v.y,
            (sw * si) * v.x + (cw * si) * v.y};
    };

    CartesianState out;
    out.position = rotate(r_pf);
    out.velocity = rotate(v_pf);
    out.epoch = el.epoch;
    return out;
}

/// Inverse conversion. Undefined node/perigee angles are reported as 0.
/// Throws for non-elliptic (e >= 1) or degenerate (rectilinear) inputs.
inline ClassicalElements cartesian_to_elements(const CartesianState& state, double mu) {
    const Vec3& r = state.position;
    const Vec3& v = state.velocity;
    const double rn = r.norm();
    const double vn = v.norm();

    Vec3 h = r.cross(v);
    const double hn = h.norm();
    if (hn < 1e-8) throw std::domain_error("degenerate (rectilinear) orbit");

    const double energy = 0.5 * vn * vn - mu / rn;
    if (energy >= 0.0) throw std::domain_error("orbit is not elliptic (e >= 1)");

    Vec3 e_vec = (v.cross(h) / mu) - r / rn;
    const double e = e_vec.norm();
    if (e >= 1.0) throw std::domain_error("orbit is not elliptic (e >= 1)");

    ClassicalElements el;
    el.a = -mu / (2.0 * energy);
    el.e = e;
    el.i = std::acos(std::clamp(h.z / hn, -1.0, 1.0));
    el.epoch = state.epoch;

    Vec3 node{-h.y, h.x, 0.0};
    const double nn = node.norm();
    const bool equatorial = nn < 1e-11 * hn;
    const bool circular = e < 1e-11;

    if (equatorial) {
        el.raan = 0.0;
        node = Vec3{1.0, 0.0, 0.0};
    } else {
        el.raan = wrap_two_pi(std::atan2(node.y, node.x));
    }

    if (circular) {
        el.argp = 0.0;
        // True anomaly measured from the node line (argument of latitude).
        Vec3 m = h.normalized().cross(node.normalized());
        el.nu = wrap_two_pi(std::atan2(r.dot(m) / rn, r.dot(node.normalized()) / rn));
    } else {
        Vec3 nhat = node.normalized();
        Vec3 m = h.normalized().cross(nhat);
        el.argp = wrap_two_pi(std::atan2(e_vec.dot(m), e_vec.dot(nhat)));
        Vec3 ehat = e_vec / e;
        Vec3 q = h.normalized().cross(ehat);
        el.nu = wrap_two_pi(std::atan2(r.dot(q) / rn, r.dot(ehat) / rn));
    }
    return el;
}

/// Radial / along-track(transverse) / cross-track unit triad of a state.
struct RtnFrame {
    Vec3 radial, transverse, normal;
};

inline RtnFrame rtn_frame(const CartesianState& s) {
    RtnFrame f;
    f.radial = s.position.normalized();
    f.normal = s.position.cross(s.velocity).normalized();
    f.transverse = f.normal.cross(f.radial);
    return f;
}

inline Vec3 rtn_to_inertial(const RtnFrame& f, const Vec3& rtn) {
    return f.radial * rtn.x + f.transverse * rtn.y + f.normal * rtn.z;
}

}  // namespace detour
