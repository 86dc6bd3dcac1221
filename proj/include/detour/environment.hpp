#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "detour/elements.hpp"
#include "detour/math.hpp"

namespace detour {

struct AtmosphereBand {
    double base_altitude_km;
    double base_density_kgm3;
    double scale_height_km;
};

/// Piecewise-exponential atmosphere, Vallado "Fundamentals of Astrodynamics
/// and Applications" Table 8-4 (static, no space-weather dependence). Bands
/// below 100 km are omitted; mission orbits never reach them.
inline std::vector<AtmosphereBand> default_atmosphere_table() {
    return {
        {100.0, 5.297e-7, 5.877},  {110.0, 9.661e-8, 7.263},
        {120.0, 2.438e-8, 9.473},  {130.0, 8.484e-9, 12.636},
        {140.0, 3.845e-9, 16.149}, {150.0, 2.070e-9, 22.523},
        {180.0, 5.464e-10, 29.740},{200.0, 2.789e-10, 37.105},
        {250.0, 7.248e-11, 45.546},{300.0, 2.418e-11, 53.628},
        {350.0, 9.518e-12, 53.298},{400.0, 3.725e-12, 58.515},
        {450.0, 1.585e-12, 60.828},{500.0, 6.967e-13, 63.822},
        {600.0, 1.454e-13, 71.835},{700.0, 3.614e-14, 88.667},
        {800.0, 1.170e-14, 124.64},{900.0, 5.245e-15, 181.05},
        {1000.0, 3.019e-15, 268.00},
    };
}

struct Environment {
    double mu = 398600.4418;   ///< [km^3/s^2]
    double re = 6378.137;      ///< [km]
    double j2 = 1.08263e-3;
    double g0 = 9.80665;       ///< [m/s^2]
    std::vector<AtmosphereBand> atmosphere = default_atmosphere_table();

    double min_table_altitude() const { return atmosphere.front().base_altitude_km; }
};

/// Load an atmosphere table from text rows "altitude_km density_kg_m3 scale_height_km"
/// ('#' comments allowed). Rows must be sorted by altitude.
inline std::vector<AtmosphereBand> load_atmosphere_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open atmosphere table: " + path);
    std::vector<AtmosphereBand> table;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        AtmosphereBand b{};
        if (ss >> b.base_altitude_km >> b.base_density_kgm3 >> b.scale_height_km)
            table.push_back(b);
    }
    if (table.empty()) throw std::runtime_error("empty atmosphere table: " + path);
    for (size_t k = 1; k < table.size(); ++k)
        if (table[k].base_altitude_km <= table[k - 1].base_altitude_km)
            throw std::runtime_error("atmosphere table not sorted by altitude");
    return table;
}

/// rho = rho_b * exp(-(h - h_b)/H) on the containing band. Altitudes above the
/// last base node extrapolate on the last band; the valid range is
/// [first node, 2000 km].
inline double atmospheric_density(double altitude_km, const Environment& env) {
    const auto& t = env.atmosphere;
    if (altitude_km < t.front().base_altitude_km || altitude_km > 2000.0)
        throw std::out_of_range("altitude outside atmosphere table range");
    size_t k = t.size() - 1;
    while (k > 0 && altitude_km < t[k].base_altitude_km) --k;
    return t[k].base_density_kgm3 *
           std::exp(-(altitude_km - t[k].base_altitude_km) / t[k].scale_height_km);
}

/// Secular J2 nodal rate for a (near-)circular orbit [rad/s].
inline double j2_raan_rate(double a, double /*e*/, double i, const Environment& env) {
    double mean_motion = std::sqrt(env.mu / (a * a * a));
    double ratio = env.re / a;
    return -1.5 * env.j2 * mean_motion * ratio * ratio * std::cos(i);
}

/// First zonal-harmonic acceleration in the inertial frame [km/s^2].
inline Vec3 j2_acceleration(const CartesianState& state, const Environment& env) {
    const Vec3& r = state.position;
    double rn = r.norm();
    double zr = r.z / rn;
    double factor = -1.5 * env.j2 * env.mu * env.re * env.re / std::pow(rn, 5);
    double five_zr2 = 5.0 * zr * zr;
    return {factor * r.x * (1.0 - five_zr2), factor * r.y * (1.0 - five_zr2),
            factor * r.z * (3.0 - five_zr2)};
}

/// a_drag = -(1/2) rho Cd A v^2 / m along the velocity direction [km/s^2].
/// Inertial velocity; no atmosphere co-rotation.
inline Vec3 drag_acceleration(const CartesianState& state, double mass_kg,
                              const SpacecraftConfig& sc, const Environment& env,
                              double area_m2 = -1.0) {
    double area = area_m2 > 0.0 ? area_m2 : sc.frontal_area;
    double altitude = state.position.norm() - env.re;
    double rho = atmospheric_density(altitude, env);
    double v = state.velocity.norm();
    // 0.5*rho*Cd*A*v^2/m with v in m/s gives m/s^2; net factor 1e3 in km/s^2.
    double mag = 0.5e3 * rho * sc.drag_coefficient * area * v * v / mass_kg;
    return state.velocity.normalized() * -mag;
}

/// Drag deceleration magnitude [km/s^2] on a circular orbit of radius a.
inline double circular_drag_accel(double a, double mass_kg, const SpacecraftConfig& sc,
                                  const Environment& env, double area_m2 = -1.0) {
    double area = area_m2 > 0.0 ? area_m2 : sc.frontal_area;
    double rho = atmospheric_density(a - env.re, env);
    double v = circular_speed(env.mu, a);
    return 0.5e3 * rho * sc.drag_coefficient * area * v * v / mass_kg;
}

/// Low-precision analytic solar ephemeris (mean-longitude series), unit vector
/// in the geocentric equatorial frame. Good to well under 0.02 rad.
inline Vec3 sun_direction(double epoch_s) {
    double d = epoch_s / kSecondsPerDay;  // days since J2000
    double mean_lon = wrap_two_pi((280.460 + 0.9856474 * d) * kDegToRad);
    double mean_anom = wrap_two_pi((357.528 + 0.9856003 * d) * kDegToRad);
    double ecl_lon = mean_lon + (1.915 * std::sin(mean_anom) +
                                 0.020 * std::sin(2.0 * mean_anom)) * kDegToRad;
    double obliquity = (23.439 - 4.0e-7 * d) * kDegToRad;
    return {std::cos(ecl_lon), std::cos(obliquity) * std::sin(ecl_lon),
            std::sin(obliquity) * std::sin(ecl_lon)};
}

namespace detail {

/// Orbit-plane geometry versus the sun for a circular orbit: out-of-plane
/// sun angle (beta) and the argument of latitude of the anti-sun direction.
struct SunGeometry {
    double cos_beta;         ///< cosine of the out-of-plane sun angle
    double shadow_center;    ///< arg of latitude of the in-plane anti-sun point
};

inline SunGeometry sun_geometry(double i, double raan, double epoch_s) {
    Vec3 sun = sun_direction(epoch_s);
    double cO = std::cos(raan), sO = std::sin(raan);
    double ci = std::cos(i), si = std::sin(i);
    Vec3 node{cO, sO, 0.0};                       // ascending node direction
    Vec3 in_plane{-sO * ci, cO * ci, si};         // 90 deg ahead of the node
    Vec3 anti = -1.0 * sun;
    double u = anti.dot(node);
    double w = anti.dot(in_plane);
    SunGeometry g;
    g.cos_beta = std::sqrt(std::min(1.0, u * u + w * w));
    g.shadow_center = wrap_two_pi(std::atan2(w, u));
    return g;
}

}  // namespace detail

/// Fraction of a circular orbit of semi-major axis a spent outside the
/// cylindrical Earth shadow. Returns 1 when the orbit never enters shadow.
inline double sunlit_fraction(double a, double i, double raan, double epoch_s,
                              const Environment& env) {
    auto g = detail::sun_geometry(i, raan, epoch_s);
    double ratio = env.re / a;
    double cos_half_max = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    if (g.cos_beta <= cos_half_max) return 1.0;  // shadow cylinder missed
    double half_width = std::acos(std::clamp(cos_half_max / g.cos_beta, -1.0, 1.0));
    return 1.0 - half_width / kPi;
}

/// Argument of latitude at the center of the eclipse arc, or nullopt for a
/// full-sun orbit (circular-orbit, cylindrical-shadow model).
inline std::optional<double> eclipse_center_arglat(const ClassicalElements& el,
                                                   double epoch_s,
                                                   const Environment& env) {
    auto g = detail::sun_geometry(el.i, el.raan, epoch_s);
    double ratio = env.re / el.a;
    double cos_half_max = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    if (g.cos_beta <= cos_half_max) return std::nullopt;
    return g.shadow_center;
}

/// Whether the arg-of-latitude theta on a circular orbit (a, i, raan) lies
/// inside the cylindrical Earth shadow.
inline bool in_shadow(double a, double i, double raan, double theta, double epoch_s,
                      const Environment& env) {
    auto g = detail::sun_geometry(i, raan, epoch_s);
    double ratio = env.re / a;
    double cos_half_max = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    if (g.cos_beta <= cos_half_max) return false;
    double half_width = std::acos(std::clamp(cos_half_max / g.cos_beta, -1.0, 1.0));
    return minor_arc(theta, g.shadow_center) < half_width;
}

}  // namespace detour
