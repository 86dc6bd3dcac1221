#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "detour/elements.hpp"
#include "detour/environment.hpp"
#include "detour/math.hpp"

namespace detour {

struct TargetState {
    double a = 0.0;     ///< [km]
    double e = 0.0;
    double i = 0.0;     ///< [rad]
    double raan = 0.0;  ///< [rad]
};

struct RuggieroWeights {
    double w_a = 1.0, w_e = 0.0, w_i = 1.0, w_raan = 1.0;
    // Activation thresholds (eta^bd) per element; 0 means always steer.
    double gate_a = 0.0, gate_e = 0.0, gate_i = 0.0, gate_raan = 0.0;
};

struct DvLawWeights {
    // lambda_a is fixed at 1 and not tunable.
    double lambda_e1 = 0.1, lambda_e2 = 0.5;
    double lambda_ai = 1.0, lambda_ei = 0.5;
    double lambda_araan = 0.05;
    double lambda_argp = 0.0;
};

struct QLawWeights {
    double w_a = 1.0, w_e = 0.0, w_i = 1.0, w_raan = 0.01;
    double w_p = 0.0;             ///< periapsis penalty weight (off by default)
    double rp_min_km = 6578.0;    ///< penalty reference periapsis radius
    double k_penalty = 1.0;
};

struct GuidanceWeights {
    RuggieroWeights ruggiero;
    DvLawWeights dvlaw;
    QLawWeights qlaw;
};

/// Unit thrust direction in the radial / along-track / cross-track frame.
struct ThrustDirection {
    Vec3 u;
    bool active = false;
};

/// Gauss variational equations for the slow elements (a, e, i, raan) under a
/// perturbing acceleration in the (radial, transverse, normal) frame.
struct GveMatrix {
    std::array<std::array<double, 3>, 4> b{};
    bool raan_row_valid = true;

    /// Directional rates for a unit acceleration along u.
    std::array<double, 4> rates(const Vec3& u) const {
        std::array<double, 4> out{};
        for (int r = 0; r < 4; ++r)
            out[r] = b[r][0] * u.x + b[r][1] * u.y + b[r][2] * u.z;
        return out;
    }
};

inline GveMatrix gve_matrix(const ClassicalElements& el, const Environment& env) {
    GveMatrix m;
    const double p = el.a * (1.0 - el.e * el.e);
    const double h = std::sqrt(env.mu * p);
    const double r = p / (1.0 + el.e * std::cos(el.nu));
    const double sn = std::sin(el.nu), cn = std::cos(el.nu);
    const double u = el.argp + el.nu;

    m.b[0][0] = 2.0 * el.a * el.a / h * el.e * sn;
    m.b[0][1] = 2.0 * el.a * el.a / h * p / r;
    m.b[1][0] = p * sn / h;
    m.b[1][1] = ((p + r) * cn + r * el.e) / h;
    m.b[2][2] = r * std::cos(u) / h;
    const double si = std::sin(el.i);
    if (std::abs(si) < 1e-12) {
        m.raan_row_valid = false;
        m.b[3][2] = 0.0;
    } else {
        m.b[3][2] = r * std::sin(u) / (h * si);
    }
    return m;
}

namespace detail {

inline Vec3 alpha_beta_dir(double alpha, double beta) {
    return {std::cos(beta) * std::sin(alpha), std::cos(beta) * std::cos(alpha),
            std::sin(beta)};
}

}  // namespace detail

/// Element-steering guidance: per-element optimal thrust vectors gated by
/// efficiency thresholds, blended with error-proportional coefficients. The
/// semi-major-axis error in the blend is expressed in Earth radii so the four
/// coefficients share a comparable scale.
inline ThrustDirection ruggiero_direction(const ClassicalElements& el,
                                          const TargetState& target,
                                          const RuggieroWeights& w,
                                          const Environment& env) {
    const double e = el.e, nu = el.nu;
    const double one_pe = 1.0 + e * std::cos(nu);
    const double u_lat = el.argp + nu;
    const double r = el.radius();
    const double v = std::sqrt(env.mu * (2.0 / r - 1.0 / el.a));

    Vec3 blend{};

    // Semi-major axis.
    double eta_a = v * std::sqrt(el.a * (1.0 - e) / (env.mu * (1.0 + e)));
    if (eta_a > w.gate_a) {
        double alpha = std::atan2(e * std::sin(nu), one_pe);
        Vec3 t = detail::alpha_beta_dir(alpha, 0.0) * (double)sgn(target.a - el.a);
        blend += t * (std::abs(el.a - target.a) / env.re * w.w_a);
    }

    // Eccentricity.
    double ea = eccentric_from_true(nu, e);
    double eta_e = (1.0 + 2.0 * e * std::cos(nu) + std::cos(nu) * std::cos(nu)) /
                   one_pe;
    if (eta_e > w.gate_e) {
        double alpha = std::atan2(std::sin(nu), std::cos(ea) + std::cos(nu));
        Vec3 t = detail::alpha_beta_dir(alpha, 0.0) * (double)sgn(target.e - el.e);
        blend += t * (std::abs(el.e - target.e) * w.w_e);
    }

    // Inclination.
    double eta_i = std::abs(std::cos(u_lat)) / one_pe *
                   (std::sqrt(1.0 - e * e * std::sin(el.argp) * std::sin(el.argp)) -
                    e * std::abs(wrap_pi(el.argp)));
    if (eta_i > w.gate_i) {
        double beta = 0.5 * kPi * sgn(std::cos(u_lat));
        Vec3 t = detail::alpha_beta_dir(0.0, beta) * (double)sgn(target.i - el.i);
        blend += t * (std::abs(el.i - target.i) * w.w_i);
    }

    // Node: steer along the minor arc.
    double eta_raan = std::abs(std::sin(u_lat)) / one_pe *
                      (std::sqrt(1.0 - e * e * std::cos(nu) * std::cos(nu)) -
                       e * std::abs(std::sin(el.argp)));
    if (eta_raan > w.gate_raan) {
        double beta = 0.5 * kPi * sgn(std::sin(u_lat));
        double sign = -sgn(std::sin(el.raan - target.raan));
        Vec3 t = detail::alpha_beta_dir(0.0, beta) * sign;
        blend += t * (minor_arc(el.raan, target.raan) * w.w_raan);
    }

    ThrustDirection out;
    double n = blend.norm();
    if (n < 1e-12) return out;
    out.u = blend / n;
    out.active = true;
    return out;
}

/// Lyapunov "remaining delta-v" function of the Dv-Law.
/// The eccentricity branch combines the two logarithms into a single positive-
/// argument logarithm; for circular-to-circular transfers the whole branch is
/// the 0/0 limit and is set to zero.
inline double dvlaw_value(const ClassicalElements& el, const TargetState& target,
                          const DvLawWeights& w, const Environment& env) {
    const double vc = std::sqrt(env.mu / el.a);
    const double vcf = std::sqrt(env.mu / target.a);
    const double di = el.i - target.i;
    const double draan = minor_arc(el.raan, target.raan);
    const double de = el.e - target.e;

    double dsigma = std::hypot(w.lambda_ai * di,
                               w.lambda_araan * std::sin(el.i) * draan);
    double value = vc * vc - 2.0 * vc * vcf * std::cos(0.5 * kPi * dsigma) +
                   vcf * vcf;

    bool circular_pair = std::abs(de) < 1e-4 && el.e < 1e-3;
    if (!circular_pair && w.lambda_e1 > 0.0) {
        double log_arg = ((target.e + 1.0) * (1.0 - el.e)) /
                         ((1.0 - target.e) * (1.0 + el.e));
        double denom = std::log(log_arg) - de;
        double beta_t;
        if (std::abs(denom) < 1e-30) {
            beta_t = 0.5 * kPi - 1e-9;
        } else {
            beta_t = std::atan(std::abs(3.0 * kPi * w.lambda_ei * di /
                                        (4.0 * std::cos(w.lambda_argp * el.argp) *
                                         denom)));
        }
        double vmix = (1.0 - w.lambda_e2) * vc + w.lambda_e2 * vcf;
        double ecc_term = vmix * (std::asin(el.e) - std::asin(target.e)) /
                          std::cos(beta_t);
        value += (4.0 / 9.0) * w.lambda_e1 * ecc_term * ecc_term;
    }
    return value;
}

namespace detail {

/// Central finite-difference gradient of a law scalar with respect to
/// (a, e, i, raan); relative step 1e-6 with floors, one-sided at the e >= 0
/// boundary.
template <typename Fn>
inline std::array<double, 4> fd_gradient(const ClassicalElements& el, Fn&& fn,
                                         double rel = 1e-6) {
    std::array<double, 4> g{};
    auto eval = [&](double a, double e, double i, double raan) {
        ClassicalElements p = el;
        p.a = a;
        p.e = e;
        p.i = i;
        p.raan = raan;
        return fn(p);
    };
    double ha = std::abs(el.a) * rel;
    g[0] = (eval(el.a + ha, el.e, el.i, el.raan) -
            eval(el.a - ha, el.e, el.i, el.raan)) / (2.0 * ha);
    double he = std::max(std::abs(el.e) * rel, 1e-9);
    if (el.e - he >= 0.0) {
        g[1] = (eval(el.a, el.e + he, el.i, el.raan) -
                eval(el.a, el.e - he, el.i, el.raan)) / (2.0 * he);
    } else {
        g[1] = (eval(el.a, el.e + he, el.i, el.raan) -
                eval(el.a, el.e, el.i, el.raan)) / he;
    }
    double hi = std::max(std::abs(el.i) * rel, 1e-8);
    g[2] = (eval(el.a, el.e, el.i + hi, el.raan) -
            eval(el.a, el.e, el.i - hi, el.raan)) / (2.0 * hi);
    double hr = std::max(std::abs(el.raan) * rel, 1e-8);
    g[3] = (eval(el.a, el.e, el.i, el.raan + hr) -
            eval(el.a, el.e, el.i, el.raan - hr)) / (2.0 * hr);
    return g;
}

/// Steepest-descent direction u = -B^T g^T / ||g B||.
inline ThrustDirection descent_direction(const std::array<double, 4>& g,
                                         const GveMatrix& m) {
    Vec3 raw{};
    for (int r = 0; r < 4; ++r) {
        raw.x -= g[r] * m.b[r][0];
        raw.y -= g[r] * m.b[r][1];
        raw.z -= g[r] * m.b[r][2];
    }
    ThrustDirection out;
    double n = raw.norm();
    if (!(n > 1e-14)) return out;
    out.u = raw / n;
    out.active = true;
    return out;
}

}  // namespace detail

inline ThrustDirection dvlaw_direction(const ClassicalElements& el,
                                       const TargetState& target,
                                       const DvLawWeights& w,
                                       const Environment& env) {
    // Below (1 mm/s)^2 of remaining delta-v the finite-difference gradient is
    // dominated by roundoff; report inactive instead of a noise direction.
    if (dvlaw_value(el, target, w, env) < 1e-12) return {};
    auto g = detail::fd_gradient(el, [&](const ClassicalElements& p) {
        return dvlaw_value(p, target, w, env);
    });
    return detail::descent_direction(g, gve_matrix(el, env));
}

/// Maximum over true anomaly of the Gauss rates for a unit thrust
/// acceleration; standard closed forms.
struct QLawMaxRates {
    double a, e, i, raan;
};

inline QLawMaxRates qlaw_max_rates(const ClassicalElements& el,
                                   const Environment& env) {
    const double p = el.a * (1.0 - el.e * el.e);
    const double h = std::sqrt(env.mu * p);
    QLawMaxRates r;
    r.a = 2.0 * std::sqrt(el.a * el.a * el.a * (1.0 + el.e) /
                          (env.mu * (1.0 - el.e)));
    r.e = 2.0 * p / h;
    double sw = std::sin(el.argp), cw = std::cos(el.argp);
    r.i = p / (h * (std::sqrt(1.0 - el.e * el.e * sw * sw) -
                    el.e * std::abs(cw)));
    double si = std::sin(el.i);
    r.raan = si < 1e-12 ? 0.0
                        : p / (h * si * (std::sqrt(1.0 - el.e * el.e * cw * cw) -
                                         el.e * std::abs(sw)));
    return r;
}

/// Q-Law proximity quotient: weighted squared time-to-go per element, with an
/// optional periapsis-altitude penalty (disabled by default).
inline double qlaw_value(const ClassicalElements& el, const TargetState& target,
                         const QLawWeights& w, const Environment& env) {
    QLawMaxRates mr = qlaw_max_rates(el, env);
    double da = el.a - target.a;
    double s_a = std::sqrt(1.0 + std::pow(da / (3.0 * target.a), 4));
    double sum = 0.0;
    sum += s_a * w.w_a * (da / mr.a) * (da / mr.a);
    double de = el.e - target.e;
    sum += w.w_e * (de / mr.e) * (de / mr.e);
    double di = el.i - target.i;
    sum += w.w_i * (di / mr.i) * (di / mr.i);
    if (mr.raan > 0.0) {
        double draan = minor_arc(el.raan, target.raan);
        sum += w.w_raan * (draan / mr.raan) * (draan / mr.raan);
    }
    if (w.w_p > 0.0) {
        double rp = el.a * (1.0 - el.e);
        double penalty = std::exp(w.k_penalty * (1.0 - rp / w.rp_min_km));
        sum *= 1.0 + w.w_p * penalty;
    }
    return sum;
}

inline ThrustDirection qlaw_direction(const ClassicalElements& el,
                                      const TargetState& target,
                                      const QLawWeights& w,
                                      const Environment& env) {
    // Sub-millisecond squared time-to-go: treat as converged.
    if (qlaw_value(el, target, w, env) < 1e-6) return {};
    auto g = detail::fd_gradient(el, [&](const ClassicalElements& p) {
        return qlaw_value(p, target, w, env);
    });
    return detail::descent_direction(g, gve_matrix(el, env));
}

}  // namespace detour
