#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "detour/raan_match.hpp"

namespace detour {

/// One object to be removed: catalog elements plus the physical properties
/// needed for stack dynamics and ballistic decay while it waits.
struct DebrisTarget {
    std::string name;
    int catalog_id = 0;
    ClassicalElements elements;  ///< at the catalog epoch
    double mass_kg = 0.0;
    double area_m2 = 1.0;        ///< drag area while attached / decaying

    /// Elements at epoch t: RAAN advanced at the secular J2 rate, semi-major
    /// axis decayed ballistically against the static atmosphere.
    ClassicalElements propagated(double t, const Environment& env,
                                 double cd = 2.2) const {
        ClassicalElements el = elements;
        double dt_total = t - elements.epoch;
        double a = el.a;
        double raan = el.raan;
        int steps = std::max(1, (int)std::ceil(std::abs(dt_total) / kSecondsPerDay));
        double dt = dt_total / steps;
        SpacecraftConfig ballistic;
        ballistic.drag_coefficient = cd;
        ballistic.frontal_area = area_m2;
        for (int k = 0; k < steps; ++k) {
            raan += j2_raan_rate(a, el.e, el.i, env) * dt;
            double ad = circular_drag_accel(a, mass_kg, ballistic, env);
            double v = circular_speed(env.mu, a);
            a -= (2.0 * a * a * v / env.mu) * ad * dt;
        }
        el.a = a;
        el.raan = wrap_two_pi(raan);
        el.epoch = t;
        return el;
    }

    double raan_rate(const Environment& env) const {
        return j2_raan_rate(elements.a, elements.e, elements.i, env);
    }
};

enum class TourObjective { fuel, time };

struct TourDefinition {
    std::vector<DebrisTarget> debris;   ///< visit order; tour starts attached to [0]
    double shepherd_altitude_km = 350.0;
    double handover_dwell_s = 30.0 * kSecondsPerDay;
    double proximity_dwell_s = 45.0 * kSecondsPerDay;
    double launch_epoch = 0.0;
    SpacecraftConfig sc;
    TourObjective objective = TourObjective::fuel;
    double tof_max_s = 1825.0 * kSecondsPerDay;  ///< bound when minimizing fuel
    double dv_max_kms = 1.5;                     ///< bound when minimizing time
    int n_segments = 1000;

    // Drift-orbit box bounds for the optimization vector.
    double alt_min_km = 300.0, alt_max_km = 1200.0;
    double inc_min = 95.0 * kDegToRad, inc_max = 102.0 * kDegToRad;

    size_t n_rendezvous() const {
        return debris.empty() ? 0 : debris.size() - 1;
    }
    size_t vector_size(bool with_epoch = false) const {
        return 2 * n_rendezvous() + (with_epoch ? 1 : 0);
    }
};

/// Flat decision vector [V_d1, I_d1, V_d2, I_d2, ...] with an optional
/// trailing launch-epoch offset [s].
struct OptimizationVector {
    std::vector<double> values;

    DriftOrbit drift(size_t leg) const {
        return {values.at(2 * leg), values.at(2 * leg + 1)};
    }
    bool has_epoch_offset(const TourDefinition& def) const {
        return values.size() == def.vector_size(true);
    }
    double epoch_offset(const TourDefinition& def) const {
        return has_epoch_offset(def) ? values.back() : 0.0;
    }
};

enum class SegmentKind { thrust, drift };

/// A contiguous piece of the tour reference trajectory.
struct TourSegment {
    SegmentKind kind = SegmentKind::thrust;
    int leg_no = 0;          ///< 1-based mission leg; 0 for dwell segments
    std::string label;
    TransferProfile profile;
    double extra_mass = 0.0; ///< attached debris mass [kg]
    double extra_area = 0.0; ///< attached debris drag area [m^2]
};

struct TourLegSummary {
    int leg_no = 0;          ///< 0 for dwells
    std::string label;
    std::string kind;        ///< deorbit | rendezvous | handover | proximity
    double dv_kms = 0.0;
    double tof_s = 0.0;
    double end_mass = 0.0;   ///< servicer mass at the end [kg]
    double end_a = 0.0, end_i = 0.0, end_raan = 0.0;
};

struct TourSolution {
    std::vector<TourSegment> segments;
    std::vector<TourLegSummary> legs;
    double dv_total = 0.0;   ///< [km/s]
    double tof_total = 0.0;  ///< [s]
    double fuel_kg = 0.0;
    double launch_epoch = 0.0;
    bool feasible = true;
    std::string failure;     ///< reason when infeasible
};

/// Deterministic assembly of a full tour for a given decision vector.
/// Leg numbering follows the mission tables: odd legs deorbit (debris
/// attached), even legs climb back up through a drift orbit. Infeasible
/// geometry (altitude bounds, no relative drift) is reported through
/// `feasible`/`failure` rather than thrown.
inline TourSolution evaluate_tour(const TourDefinition& def,
                                  const OptimizationVector& x,
                                  const Environment& env) {
    if (def.debris.empty()) throw std::invalid_argument("empty debris sequence");
    if (x.values.size() != def.vector_size(false) &&
        x.values.size() != def.vector_size(true))
        throw std::invalid_argument("optimization vector size mismatch");

    TourSolution sol;
    const double mu = env.mu;
    const double a_shep = env.re + def.shepherd_altitude_km;

    double t = def.launch_epoch + x.epoch_offset(def);
    sol.launch_epoch = t;
    double servicer_mass = def.sc.wet_mass;

    auto add_summary = [&sol](int leg_no, const std::string& label,
                              const std::string& kind, double dv, double tof,
                              double mass, double a, double i, double raan) {
        sol.legs.push_back({leg_no, label, kind, dv, tof, mass, a, i, raan});
        sol.dv_total += dv;
        sol.tof_total += tof;
    };

    try {
        // Start attached to debris 0 at launch.
        ClassicalElements chaser = def.debris[0].propagated(t, env);
        chaser.e = 0.0;  // PMDT works on the circular approximation

        for (size_t k = 0; k < def.debris.size(); ++k) {
            const DebrisTarget& target = def.debris[k];
            int deorbit_leg_no = 2 * (int)k + 1;

            if (k > 0) {
                // Rendezvous leg through the k-th drift orbit.
                int leg_no = 2 * (int)k;
                DriftOrbit drift = x.drift(k - 1);
                double alt_d = drift.sma(mu) - env.re;
                if (alt_d < def.alt_min_km || alt_d > def.alt_max_km ||
                    drift.i_d < def.inc_min || drift.i_d > def.inc_max)
                    throw std::runtime_error("drift orbit outside bounds");

                ClassicalElements to = target.propagated(t, env);
                to.e = 0.0;
                RaanMatchOptions rmo;
                rmo.edelbaum.n_segments = def.n_segments;
                rmo.edelbaum.start_mass = servicer_mass;
                RaanTransfer rt = raan_matching_transfer(chaser, to, drift,
                                                         def.sc, env, rmo);

                std::string base = "leg" + std::to_string(leg_no);
                sol.segments.push_back({SegmentKind::thrust, leg_no,
                                        base + ".climb", rt.phase1, 0.0, 0.0});
                sol.segments.push_back({SegmentKind::drift, leg_no,
                                        base + ".drift", rt.drift, 0.0, 0.0});
                sol.segments.push_back({SegmentKind::thrust, leg_no,
                                        base + ".descend", rt.phase2, 0.0, 0.0});

                t += rt.tof_total;
                servicer_mass = rt.phase2.mass.back();
                chaser.a = to.a;
                chaser.i = to.i;
                chaser.raan = rt.raan_final;
                chaser.epoch = t;
                add_summary(leg_no, base, "rendezvous", rt.dv_total, rt.tof_total,
                            servicer_mass, chaser.a, chaser.i,
                            wrap_two_pi(chaser.raan));

                // Proximity operations: station-kept dwell at the debris orbit.
                TransferProfile prox = make_drift_profile(
                    chaser.a, chaser.i, chaser.raan, t, def.proximity_dwell_s,
                    servicer_mass, def.sc, env);
                sol.segments.push_back({SegmentKind::drift, 0,
                                        "proximity" + std::to_string(k), prox,
                                        0.0, 0.0});
                t += def.proximity_dwell_s;
                servicer_mass = prox.mass.back();
                chaser.raan = prox.raan.back();
                chaser.epoch = t;
                add_summary(0, "proximity" + std::to_string(k), "proximity",
                            prox.dv_total, def.proximity_dwell_s, servicer_mass,
                            chaser.a, chaser.i, wrap_two_pi(chaser.raan));
            }

            // Deorbit leg: debris attached, coplanar descent to the handover orbit.
            double stack_mass = servicer_mass + target.mass_kg;
            EdelbaumOptions eo;
            eo.n_segments = def.n_segments;
            eo.start_mass = stack_mass;
            eo.extra_area = target.area_m2;
            EdelbaumBoundary down = EdelbaumBoundary::between(
                chaser.a, a_shep, chaser.i, chaser.i, chaser.raan, t, mu);
            TransferProfile leg = extended_edelbaum(down, def.sc, env, eo);

            std::string base = "leg" + std::to_string(deorbit_leg_no);
            sol.segments.push_back({SegmentKind::thrust, deorbit_leg_no, base, leg,
                                    target.mass_kg, target.area_m2});
            t += leg.tof;
            servicer_mass -= stack_mass - leg.mass.back();  // fuel burned
            chaser.a = a_shep;
            chaser.raan = leg.raan.back();
            chaser.epoch = t;
            add_summary(deorbit_leg_no, base, "deorbit", leg.dv_total, leg.tof,
                        servicer_mass, chaser.a, chaser.i,
                        wrap_two_pi(chaser.raan));

            // Handover: debris dropped, servicer station-keeps at the shepherd
            // orbit for the dwell.
            TransferProfile hold = make_drift_profile(
                chaser.a, chaser.i, chaser.raan, t, def.handover_dwell_s,
                servicer_mass, def.sc, env);
            sol.segments.push_back({SegmentKind::drift, 0,
                                    "handover" + std::to_string(k + 1), hold,
                                    0.0, 0.0});
            t += def.handover_dwell_s;
            servicer_mass = hold.mass.back();
            chaser.raan = hold.raan.back();
            chaser.epoch = t;
            add_summary(0, "handover" + std::to_string(k + 1), "handover",
                        hold.dv_total, def.handover_dwell_s, servicer_mass,
                        chaser.a, chaser.i, wrap_two_pi(chaser.raan));
        }
    } catch (const std::exception& ex) {
        sol.feasible = false;
        sol.failure = ex.what();
    }

    sol.fuel_kg = def.sc.wet_mass - servicer_mass;
    return sol;
}

}  // namespace detour
