#pragma once

#include <cmath>
#include <stdexcept>

#include "detour/edelbaum.hpp"

namespace detour {

/// Intermediate coast orbit of a thrust-drift-thrust transfer.
struct DriftOrbit {
    double v_d = 0.0;  ///< circular speed [km/s]
    double i_d = 0.0;  ///< inclination [rad]

    double sma(double mu) const { return mu / (v_d * v_d); }
    static DriftOrbit from_sma(double a_d, double i_d, double mu) {
        return {circular_speed(mu, a_d), i_d};
    }
};

struct RaanTransfer {
    TransferProfile phase1;       ///< thrust up to the drift orbit
    TransferProfile drift;        ///< coast with drag-offset station keeping
    TransferProfile phase2;       ///< thrust from the drift orbit to the target
    double drift_duration = 0.0;  ///< [s]
    double dv_station_keeping = 0.0;  ///< [km/s]
    double dv_total = 0.0;        ///< [km/s]
    double tof_total = 0.0;       ///< [s]
    double raan_final = 0.0;      ///< unwrapped spacecraft RAAN at arrival [rad]
};

/// Smallest non-negative coast time closing the RAAN matching equation
///   raan_after_thrust + rate_sc * T = raan_target_t0 + rate_target * (T + tof_t1 + tof_t2)
/// modulo 2*pi. raan_after_thrust already contains both thrust phases'
/// precession. Throws when the rates are (numerically) equal.
inline double drift_time(double raan_after_thrust, double raan_rate_sc,
                         double raan_target_t0, double raan_rate_target,
                         double tof_t1, double tof_t2) {
    double rel_rate = raan_rate_sc - raan_rate_target;
    double deficit = raan_target_t0 + raan_rate_target * (tof_t1 + tof_t2) -
                     raan_after_thrust;
    if (std::abs(rel_rate) < 1e-18) {
        if (std::abs(wrap_pi(deficit)) < 1e-9) return 0.0;  // already matched
        throw std::domain_error("no relative nodal drift between orbits");
    }
    // T = (deficit + 2 pi k) / rel_rate; pick the smallest non-negative branch.
    double base = deficit / rel_rate;
    double period = kTwoPi / std::abs(rel_rate);
    double t = std::fmod(base, period);
    if (t < 0.0) t += period;
    return t;
}

/// Delta-v to hold a circular drift orbit against drag for a duration
/// (thrust equal and opposite to the drag acceleration). Stepped quadrature
/// with the mass ledger updating along the way.
inline double drift_station_keeping_dv(const DriftOrbit& orbit, double duration,
                                       const SpacecraftConfig& sc,
                                       const Environment& env,
                                       double start_mass = -1.0, int steps = 1024) {
    if (duration < 0.0) throw std::invalid_argument("negative drift duration");
    if (duration == 0.0) return 0.0;
    double a_d = orbit.sma(env.mu);
    double mass = start_mass > 0.0 ? start_mass : sc.wet_mass;
    double c_exh = sc.exhaust_velocity_kms(env.g0);
    double dt = duration / steps;
    double dv = 0.0;
    for (int k = 0; k < steps; ++k) {
        double ddv = circular_drag_accel(a_d, mass, sc, env) * dt;
        dv += ddv;
        mass *= std::exp(-ddv / c_exh);
    }
    return dv;
}

struct RaanMatchOptions {
    EdelbaumOptions edelbaum;
    int drift_profile_samples = 128;
};

/// Thrust-drift-thrust transfer from one quasi-circular orbit to another with
/// RAAN matching through differential J2 precession on the drift orbit.
/// `from` supplies (a, i, raan, epoch); `to` supplies the target (a, i) and
/// the target's raan/rate at the *start* epoch of the transfer.
inline RaanTransfer raan_matching_transfer(const ClassicalElements& from,
                                           const ClassicalElements& to,
                                           const DriftOrbit& drift,
                                           const SpacecraftConfig& sc,
                                           const Environment& env,
                                           const RaanMatchOptions& opt = {}) {
    RaanTransfer out;
    const double mu = env.mu;
    const double a_d = drift.sma(mu);

    EdelbaumOptions opt1 = opt.edelbaum;
    EdelbaumBoundary b1 = EdelbaumBoundary::between(from.a, a_d, from.i, drift.i_d,
                                                    from.raan, from.epoch, mu);
    out.phase1 = extended_edelbaum(b1, sc, env, opt1);
    const double mass_after_t1 = out.phase1.mass.back();
    const double d_raan_t1 = out.phase1.raan.back() - out.phase1.raan.front();
    const double rate_sc = j2_raan_rate(a_d, 0.0, drift.i_d, env);
    const double rate_target = j2_raan_rate(to.a, to.e, to.i, env);
    const double c_exh = sc.exhaust_velocity_kms(env.g0);

    // The coast duration feeds back into phase 2 (station-keeping fuel changes
    // the thrust acceleration and hence its duration and precession); iterate
    // the matching equation to a fixed point.
    double t_d = 0.0;
    EdelbaumOptions opt2 = opt.edelbaum;
    EdelbaumBoundary b2{};
    TransferProfile phase2;
    for (int iter = 0; iter < 25; ++iter) {
        out.dv_station_keeping =
            drift_station_keeping_dv(drift, t_d, sc, env, mass_after_t1);
        opt2.start_mass = mass_after_t1 * std::exp(-out.dv_station_keeping / c_exh);
        b2 = EdelbaumBoundary::between(a_d, to.a, drift.i_d, to.i,
                                       from.raan + d_raan_t1 + rate_sc * t_d,
                                       from.epoch + out.phase1.tof + t_d, mu);
        phase2 = extended_edelbaum(b2, sc, env, opt2);
        double d_raan_t2 = phase2.raan.back() - phase2.raan.front();
        double t_new = drift_time(from.raan + d_raan_t1 + d_raan_t2, rate_sc,
                                  to.raan, rate_target, out.phase1.tof, phase2.tof);
        double change = std::abs(t_new - t_d);
        t_d = t_new;
        if (change < 1e-6) break;
    }
    out.drift_duration = t_d;
    out.phase2 = phase2;

    out.drift = make_drift_profile(a_d, drift.i_d, out.phase1.raan.back(),
                                   from.epoch + out.phase1.tof, t_d, mass_after_t1,
                                   sc, env, true, opt.drift_profile_samples);

    out.dv_total = out.phase1.dv_total + out.dv_station_keeping + out.phase2.dv_total;
    out.tof_total = out.phase1.tof + out.drift_duration + out.phase2.tof;
    out.raan_final = out.phase2.raan.back();
    return out;
}

}  // namespace detour
