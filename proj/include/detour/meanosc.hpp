#pragma once

#include <cmath>

#include "detour/elements.hpp"
#include "detour/environment.hpp"

namespace detour {

namespace detail {

/// First-order J2 short-periodic offsets (osculating minus mean), evaluated
/// at the given element set. The semi-major-axis term is the standard Brouwer
/// first-order expression; e-vector, inclination and node terms are the
/// near-circular limits, adequate for e < 0.1 to O(e*J2).
struct ShortPeriodic {
    double da, dex, dey, di, draan;
};

inline ShortPeriodic j2_short_periodic(const ClassicalElements& el,
                                       const Environment& env) {
    const double s2 = std::sin(el.i) * std::sin(el.i);
    const double c = std::cos(el.i);
    const double eta = std::sqrt(1.0 - el.e * el.e);
    const double u = el.argp + el.nu;
    const double a_over_r = (1.0 + el.e * std::cos(el.nu)) / (eta * eta);
    const double ar3 = a_over_r * a_over_r * a_over_r;
    const double cos2u = std::cos(2.0 * u), sin2u = std::sin(2.0 * u);
    const double re_a = env.re / el.a;
    const double kappa = 1.5 * env.j2 * re_a * re_a;

    ShortPeriodic d;
    d.da = env.j2 * env.re * env.re / el.a *
           ((1.0 - 1.5 * s2) * (ar3 - 1.0 / (eta * eta * eta)) +
            1.5 * s2 * ar3 * cos2u);
    d.dex = kappa * ((1.0 - 1.25 * s2) * std::cos(u) +
                     (7.0 / 12.0) * s2 * std::cos(3.0 * u));
    d.dey = kappa * ((1.0 - 1.75 * s2) * std::sin(u) +
                     (7.0 / 12.0) * s2 * std::sin(3.0 * u));
    d.di = 0.25 * kappa * std::sin(2.0 * el.i) * cos2u;
    d.draan = 0.5 * kappa * c * sin2u;
    return d;
}

inline ClassicalElements apply_short_periodic(const ClassicalElements& el,
                                              const ShortPeriodic& d, double sign) {
    ClassicalElements out = el;
    out.a = el.a + sign * d.da;
    double ex = el.e * std::cos(el.argp) + sign * d.dex;
    double ey = el.e * std::sin(el.argp) + sign * d.dey;
    out.e = std::hypot(ex, ey);
    out.argp = out.e < 1e-12 ? 0.0 : wrap_two_pi(std::atan2(ey, ex));
    out.i = el.i + sign * d.di;
    out.raan = wrap_two_pi(el.raan + sign * d.draan);
    // Keep the (fast) argument of latitude fixed across the conversion.
    out.nu = wrap_two_pi(el.argp + el.nu - out.argp);
    return out;
}

}  // namespace detail

inline ClassicalElements mean_to_osculating(const ClassicalElements& el,
                                            const Environment& env) {
    return detail::apply_short_periodic(el, detail::j2_short_periodic(el, env), +1.0);
}

/// Remove first-order J2 short-periodic variations. Intended for the
/// quasi-circular regime (e < 0.1); higher eccentricities lose accuracy but
/// still return a usable set. Inverts mean_to_osculating by fixed point so
/// the round trip closes well below the O(J2^2) theory error.
inline ClassicalElements osculating_to_mean(const ClassicalElements& el,
                                            const Environment& env) {
    ClassicalElements mean = el;
    for (int iter = 0; iter < 3; ++iter) {
        auto d = detail::j2_short_periodic(mean, env);
        mean = detail::apply_short_periodic(el, d, -1.0);
    }
    return mean;
}

}  // namespace detour
