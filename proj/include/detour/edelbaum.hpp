#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "detour/elements.hpp"
#include "detour/environment.hpp"
#include "detour/math.hpp"

namespace detour {

/// Boundary conditions of a circular-to-circular low-thrust transfer.
struct EdelbaumBoundary {
    double v0 = 0.0;     ///< initial circular speed [km/s]
    double vf = 0.0;     ///< final circular speed [km/s]
    double di = 0.0;     ///< signed total inclination change [rad]
    double i0 = 0.0;     ///< initial inclination [rad]
    double raan0 = 0.0;  ///< initial RAAN [rad]
    double epoch0 = 0.0; ///< [s]

    static EdelbaumBoundary between(double a0, double af, double i0, double i_f,
                                    double raan0, double epoch0, double mu) {
        return {circular_speed(mu, a0), circular_speed(mu, af), i_f - i0,
                i0, raan0, epoch0};
    }
};

/// Discretized transfer history. RAAN is stored unwrapped (continuous).
struct TransferProfile {
    std::vector<double> t;       ///< [s] from transfer start, strictly increasing
    std::vector<double> a;       ///< [km]
    std::vector<double> i;       ///< [rad]
    std::vector<double> raan;    ///< [rad], unwrapped
    std::vector<double> dv_cum;  ///< [km/s]
    std::vector<double> mass;    ///< [kg]
    std::vector<double> beta;    ///< signed yaw angle [rad]
    std::vector<double> w;       ///< throttle fraction per segment start
    double tof = 0.0;            ///< [s]
    double dv_total = 0.0;       ///< [km/s]
    double epoch0 = 0.0;         ///< absolute epoch of t = 0 [s]

    size_t size() const { return t.size(); }

    struct Sample {
        double a, i, raan, dv_cum, mass, beta, w;
    };

    /// Linear interpolation in time (clamped at the ends).
    Sample sample(double time) const {
        if (t.empty()) throw std::logic_error("empty profile");
        if (time <= t.front()) return at(0);
        if (time >= t.back()) return at(t.size() - 1);
        size_t hi = std::lower_bound(t.begin(), t.end(), time) - t.begin();
        size_t lo = hi - 1;
        double f = (time - t[lo]) / (t[hi] - t[lo]);
        auto lerp = [f](double x, double y) { return x + f * (y - x); };
        return {lerp(a[lo], a[hi]),      lerp(i[lo], i[hi]),
                lerp(raan[lo], raan[hi]), lerp(dv_cum[lo], dv_cum[hi]),
                lerp(mass[lo], mass[hi]), lerp(beta[lo], beta[hi]),
                w[lo]};
    }

    Sample at(size_t k) const {
        return {a[k], i[k], raan[k], dv_cum[k], mass[k], beta[k], w[k]};
    }

    void push(double t_, double a_, double i_, double raan_, double dv_, double m_,
              double beta_, double w_) {
        t.push_back(t_);
        a.push_back(a_);
        i.push_back(i_);
        raan.push_back(raan_);
        dv_cum.push_back(dv_);
        mass.push_back(m_);
        beta.push_back(beta_);
        w.push_back(w_);
    }
};

/// Total transfer cost between inclined circular orbits (Edelbaum).
inline double classical_delta_v(const EdelbaumBoundary& b) {
    if (b.di == 0.0) return std::abs(b.v0 - b.vf);
    double psi = 0.5 * kPi * std::abs(b.di);
    return std::sqrt(b.v0 * b.v0 + b.vf * b.vf -
                     2.0 * b.v0 * b.vf * std::cos(psi));
}

inline double classical_tof(double dv, double thrust_accel) {
    if (thrust_accel <= 0.0) throw std::invalid_argument("thrust accel must be > 0");
    return dv / thrust_accel;
}

/// Initial yaw steering angle, unsigned (in [0, pi]); quadrant from atan2.
/// Coplanar transfers give 0 for descent in speed (orbit raising) and pi for
/// orbit lowering.
inline double initial_yaw(const EdelbaumBoundary& b) {
    double psi = 0.5 * kPi * std::abs(b.di);
    return std::atan2(std::sin(psi), b.v0 / b.vf - std::cos(psi));
}

namespace detail {

/// Edelbaum state as a function of consumed delta-v s in a chunk with initial
/// speed v0, unsigned yaw beta0 and inclination direction sign.
struct EdelbaumChunk {
    double v0, beta0, i0, sign_i, mu;

    double speed(double s) const {
        return std::sqrt(std::max(1e-12,
            v0 * v0 + s * s - 2.0 * v0 * s * std::cos(beta0)));
    }
    double sma(double s) const {
        double v = speed(s);
        return mu / (v * v);
    }
    double incl(double s) const {
        double sb = std::sin(beta0);
        if (std::abs(sb) < 1e-14) return i0;
        double di = (2.0 / kPi) * (std::atan((s - v0 * std::cos(beta0)) / (v0 * sb)) +
                                   0.5 * kPi - beta0);
        return i0 + sign_i * di;
    }
    /// Signed yaw at s; sign carries the plane-change direction.
    double yaw(double s) const {
        double unsigned_beta = std::atan2(v0 * std::sin(beta0),
                                          v0 * std::cos(beta0) - s);
        return (sign_i < 0.0 ? -1.0 : 1.0) * unsigned_beta;
    }
};

}  // namespace detail

struct EdelbaumOptions {
    int n_segments = 1000;
    double start_mass = -1.0;    ///< [kg]; < 0 means sc.wet_mass
    double extra_area = 0.0;     ///< added drag area (attached debris) [m^2]
    bool apply_drag = true;
    bool apply_eclipse = true;
    bool constant_mass = false;  ///< hold thrust accel at the initial value
    int max_restarts = 400;
    double min_altitude_km = 200.0;
};

/// Classical Edelbaum time histories (Eqs. of the transfer solution) with a
/// fixed thrust acceleration, no drag, no eclipses, unit mass.
inline TransferProfile evaluate_profile(const EdelbaumBoundary& b,
                                        double thrust_accel, int n_segments,
                                        double mu) {
    if (n_segments < 2) throw std::invalid_argument("need at least 2 segments");
    double dv = classical_delta_v(b);
    detail::EdelbaumChunk chunk{b.v0, initial_yaw(b), b.i0,
                                b.di >= 0.0 ? 1.0 : -1.0, mu};
    TransferProfile p;
    p.epoch0 = b.epoch0;
    double t = 0.0, raan = b.raan0, dvc = 0.0;
    p.push(0.0, chunk.sma(0.0), b.i0, raan, 0.0, 1.0, chunk.yaw(0.0), 1.0);
    for (int k = 0; k < n_segments; ++k) {
        double s0 = dv * k / n_segments;
        double s1 = dv * (k + 1) / n_segments;
        double ds = s1 - s0;
        t += ds / thrust_accel;
        dvc += ds;
        p.push(t, chunk.sma(s1), chunk.incl(s1), raan, dvc, 1.0, chunk.yaw(s1), 1.0);
    }
    p.tof = t;
    p.dv_total = dvc;
    return p;
}

/// Extended Edelbaum transfer: eclipse/duty throttling dilates time, the mass
/// ledger updates the thrust acceleration, drag decays the semi-major axis and
/// the transfer restarts from the perturbed state whenever the accumulated
/// decay exceeds one nominal segment of semi-major-axis change. RAAN is
/// propagated with the secular J2 rate along the way.
inline TransferProfile extended_edelbaum(const EdelbaumBoundary& b,
                                         const SpacecraftConfig& sc,
                                         const Environment& env,
                                         const EdelbaumOptions& opt = {}) {
    const double mu = env.mu;
    const double a_target = mu / (b.vf * b.vf);
    const double i_target = b.i0 + b.di;
    const double c_exh = sc.exhaust_velocity_kms(env.g0);
    const double thrust_kn = sc.max_thrust / 1000.0;  // N -> kg*km/s^2

    double a_cur = mu / (b.v0 * b.v0);
    double i_cur = b.i0;
    double mass = opt.start_mass > 0.0 ? opt.start_mass : sc.wet_mass;
    const double f0 = thrust_kn / mass;

    TransferProfile p;
    p.epoch0 = b.epoch0;
    double t = 0.0, raan = b.raan0, dvc = 0.0;

    const double dv_ref = std::max(classical_delta_v(b), 1e-12);
    // Restart threshold: one nominal segment of semi-major-axis change at the
    // default discretization, independent of the requested sample count.
    const double da_nominal = std::abs(a_target - a_cur) / 1000.0;
    const double da_threshold = std::max(da_nominal, 1e-3);

    p.push(0.0, a_cur, i_cur, raan, 0.0, mass, 0.0, 1.0);

    int restarts = 0;
    bool first_chunk = true;
    while (true) {
        EdelbaumBoundary bc = first_chunk
            ? b
            : EdelbaumBoundary{circular_speed(mu, a_cur), b.vf, i_target - i_cur,
                               i_cur, raan, b.epoch0 + t};
        first_chunk = false;
        double dv_chunk = classical_delta_v(bc);
        if (dv_chunk < 1e-9) break;

        detail::EdelbaumChunk chunk{bc.v0, initial_yaw(bc), i_cur,
                                    bc.di >= 0.0 ? 1.0 : -1.0, mu};
        p.beta.back() = chunk.yaw(0.0);

        int n_chunk = std::max(
            8, (int)std::ceil(opt.n_segments * dv_chunk / dv_ref - 1e-9));
        double drag_acc = 0.0;
        bool restart = false;

        for (int k = 0; k < n_chunk; ++k) {
            double s0 = dv_chunk * k / n_chunk;
            double s1 = dv_chunk * (k + 1) / n_chunk;
            double ds = s1 - s0;

            double a0 = chunk.sma(s0) + drag_acc;
            double i0 = chunk.incl(s0);
            if (a0 - env.re < opt.min_altitude_km)
                throw std::runtime_error("transfer altitude dropped below " +
                                         std::to_string(opt.min_altitude_km) + " km");

            double w = 1.0;
            if (opt.apply_eclipse) {
                double w_ecl = sunlit_fraction(a0, i0, wrap_two_pi(raan),
                                               b.epoch0 + t, env);
                w = std::min(sc.duty_ratio, w_ecl);
            } else {
                w = sc.duty_ratio;
            }

            double f = opt.constant_mass ? f0 : thrust_kn / mass;
            double dt = ds / (f * w);

            if (opt.apply_drag) {
                double v0c = circular_speed(mu, a0);
                double adrag = circular_drag_accel(a0, mass, sc, env,
                                                   sc.frontal_area + opt.extra_area);
                drag_acc -= (2.0 * a0 * a0 * v0c / mu) * adrag * dt;
            }

            t += dt;
            dvc += ds;
            raan += j2_raan_rate(0.5 * (a0 + chunk.sma(s1) + drag_acc), 0.0,
                                 0.5 * (i0 + chunk.incl(s1)), env) * dt;
            if (!opt.constant_mass) mass *= std::exp(-ds / c_exh);

            p.push(t, chunk.sma(s1) + drag_acc, chunk.incl(s1), raan, dvc, mass,
                   chunk.yaw(s1), w);

            if (std::abs(drag_acc) > da_threshold) {
                a_cur = chunk.sma(s1) + drag_acc;
                i_cur = chunk.incl(s1);
                restart = true;
                break;
            }
        }

        if (!restart) {
            a_cur = a_target + drag_acc;
            i_cur = i_target;
            if (std::abs(drag_acc) < 0.05) break;  // residual below 50 m
        }
        if (++restarts > opt.max_restarts)
            throw std::runtime_error("drag-restart loop did not converge");
    }

    p.tof = t;
    p.dv_total = dvc;
    return p;
}

/// Constant-orbit coast profile (drift orbits, dwells): a and i fixed, RAAN
/// precessing at the secular J2 rate, delta-v accruing from the drag-offset
/// station keeping.
inline TransferProfile make_drift_profile(double a_d, double i_d, double raan0,
                                          double epoch0, double duration,
                                          double mass0,
                                          const SpacecraftConfig& sc,
                                          const Environment& env,
                                          bool station_keep = true,
                                          int n_samples = 128) {
    TransferProfile p;
    p.epoch0 = epoch0;
    double rate = j2_raan_rate(a_d, 0.0, i_d, env);
    double c_exh = sc.exhaust_velocity_kms(env.g0);
    double mass = mass0, dvc = 0.0;
    p.push(0.0, a_d, i_d, raan0, 0.0, mass, 0.0, 1.0);
    if (duration > 0.0) {
        int n = std::max(2, n_samples);
        double dt = duration / n;
        for (int k = 1; k <= n; ++k) {
            if (station_keep) {
                double adrag = circular_drag_accel(a_d, mass, sc, env);
                double ddv = adrag * dt;
                dvc += ddv;
                mass *= std::exp(-ddv / c_exh);
            }
            p.push(k * dt, a_d, i_d, raan0 + rate * k * dt, dvc, mass, 0.0, 1.0);
        }
    }
    p.tof = duration;
    p.dv_total = dvc;
    return p;
}

}  // namespace detour
