#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <vector>

#include "detour/tour.hpp"

namespace detour {

struct Box {
    std::vector<double> lo, hi;
    size_t dim() const { return lo.size(); }
    std::vector<double> clamp(std::vector<double> x) const {
        for (size_t k = 0; k < x.size(); ++k)
            x[k] = std::clamp(x[k], lo[k], hi[k]);
        return x;
    }
};

struct PatternSearchOptions {
    double init_step = 0.20;   ///< relative to box width
    double final_step = 1e-3;  ///< poll scale at which convergence is declared
    int max_evals = 4000;
};

namespace detail {

/// Coordinate pattern search on a scalar function over a box. Deterministic:
/// polls +/- along each axis in order, moves to the best improving neighbor,
/// halves the step when no neighbor improves.
inline std::pair<std::vector<double>, double> pattern_search(
    const std::function<double(const std::vector<double>&)>& fn, const Box& box,
    std::vector<double> x, const PatternSearchOptions& opt) {
    size_t d = box.dim();
    std::vector<double> width(d);
    for (size_t k = 0; k < d; ++k) width[k] = box.hi[k] - box.lo[k];

    x = box.clamp(std::move(x));
    double fx = fn(x);
    int evals = 1;
    double step = opt.init_step;
    while (step >= opt.final_step && evals < opt.max_evals) {
        size_t best_k = d;
        double best_f = fx;
        std::vector<double> best_x;
        for (size_t k = 0; k < d; ++k) {
            for (double dir : {+1.0, -1.0}) {
                std::vector<double> cand = x;
                cand[k] = std::clamp(cand[k] + dir * step * width[k],
                                     box.lo[k], box.hi[k]);
                if (cand[k] == x[k]) continue;
                double f = fn(cand);
                ++evals;
                if (f < best_f) {
                    best_f = f;
                    best_x = cand;
                    best_k = k;
                }
            }
        }
        if (best_k < d) {
            x = best_x;
            fx = best_f;
        } else {
            step *= 0.5;
        }
    }
    return {x, fx};
}

}  // namespace detail

struct OptimizeOptions {
    int multistarts = 8;
    uint64_t seed = 0;
    bool optimize_epoch = false;
    double epoch_halfwidth_s = 15.0 * kSecondsPerDay;
    PatternSearchOptions pattern;
    bool parallel = true;
};

struct OptimizeResult {
    TourSolution solution;
    OptimizationVector x;
    bool feasible = false;
    double objective = 0.0;            ///< km/s (fuel) or seconds (time)
    double constraint_value = 0.0;     ///< tof [s] or dv [km/s] at the optimum
    double constraint_bound = 0.0;
    bool constraint_active = false;    ///< within 0.5% of the bound
    double best_violation = std::numeric_limits<double>::infinity();
};

namespace detail {

struct TourObjectiveFn {
    const TourDefinition& def;
    const Environment& env;

    struct Eval {
        double objective;  ///< normalized
        double violation;  ///< normalized constraint excess (>= 0)
        bool feasible;
    };

    Eval operator()(const std::vector<double>& v) const {
        OptimizationVector x{v};
        TourSolution sol = evaluate_tour(def, x, env);
        if (!sol.feasible) return {1e6, 1e6, false};
        double obj, excess;
        if (def.objective == TourObjective::fuel) {
            obj = sol.dv_total;                                     // km/s
            excess = std::max(0.0, (sol.tof_total - def.tof_max_s) /
                                       def.tof_max_s);
        } else {
            obj = sol.tof_total / def.tof_max_s;                    // ~O(1)
            excess = std::max(0.0, (sol.dv_total - def.dv_max_kms) /
                                       def.dv_max_kms);
        }
        return {obj, excess, excess == 0.0};
    }
};

}  // namespace detail

/// Constrained local search: exterior quadratic penalty rounds to reach the
/// feasible region, then an extreme-barrier polish that only accepts feasible
/// points, finishing at the 1e-3-scaled poll per the acceptance definition.
inline OptimizeResult optimize_tour(const TourDefinition& def,
                                    const OptimizationVector& x0,
                                    const OptimizeOptions& opt = {},
                                    const Environment& env = {}) {
    Box box;
    size_t n_pairs = def.n_rendezvous();
    for (size_t k = 0; k < n_pairs; ++k) {
        box.lo.push_back(circular_speed(env.mu, env.re + def.alt_max_km));
        box.hi.push_back(circular_speed(env.mu, env.re + def.alt_min_km));
        box.lo.push_back(def.inc_min);
        box.hi.push_back(def.inc_max);
    }
    if (opt.optimize_epoch) {
        box.lo.push_back(-opt.epoch_halfwidth_s);
        box.hi.push_back(+opt.epoch_halfwidth_s);
    }

    detail::TourObjectiveFn tour_fn{def, env};

    auto run_start = [&](std::vector<double> start) {
        OptimizeResult res;
        res.best_violation = std::numeric_limits<double>::infinity();
        std::vector<double> x = box.clamp(std::move(start));
        // Penalty rounds.
        for (double mu_pen : {1e2, 1e4, 1e6}) {
            auto fn = [&](const std::vector<double>& v) {
                auto e = tour_fn(v);
                return e.objective + mu_pen * e.violation * e.violation;
            };
            PatternSearchOptions ps = opt.pattern;
            ps.final_step = std::max(opt.pattern.final_step, 1e-3);
            auto [xr, fr] = detail::pattern_search(fn, box, x, ps);
            x = xr;
            auto e = tour_fn(x);
            res.best_violation = std::min(res.best_violation, e.violation);
            if (e.feasible) break;
        }
        auto efin = tour_fn(x);
        if (!efin.feasible) {
            res.feasible = false;
            res.x.values = x;
            return res;
        }
        // Barrier polish: infeasible neighbors are rejected outright.
        auto barrier = [&](const std::vector<double>& v) {
            auto e = tour_fn(v);
            return e.feasible ? e.objective
                              : std::numeric_limits<double>::infinity();
        };
        PatternSearchOptions ps = opt.pattern;
        auto [xp, fp] = detail::pattern_search(barrier, box, x, ps);
        res.feasible = true;
        res.x.values = xp;
        res.objective = fp;
        return res;
    };

    // Deterministic multistart seeds: x0 first, then scrambled points.
    std::vector<std::vector<double>> starts;
    if (!x0.values.empty()) starts.push_back(x0.values);
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    while ((int)starts.size() < opt.multistarts) {
        std::vector<double> s(box.dim());
        for (size_t k = 0; k < box.dim(); ++k)
            s[k] = box.lo[k] + u01(rng) * (box.hi[k] - box.lo[k]);
        starts.push_back(std::move(s));
    }

    std::vector<OptimizeResult> results(starts.size());
    if (opt.parallel) {
        std::vector<std::future<OptimizeResult>> futs;
        futs.reserve(starts.size());
        for (auto& s : starts)
            futs.push_back(std::async(std::launch::async, run_start, s));
        for (size_t k = 0; k < futs.size(); ++k) results[k] = futs[k].get();
    } else {
        for (size_t k = 0; k < starts.size(); ++k) results[k] = run_start(starts[k]);
    }

    // Order-independent reduction: feasibility, objective, then lexicographic x.
    auto better = [](const OptimizeResult& a, const OptimizeResult& b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (!a.feasible) return a.best_violation < b.best_violation;
        if (a.objective != b.objective) return a.objective < b.objective;
        return a.x.values < b.x.values;
    };
    OptimizeResult best = results.front();
    for (size_t k = 1; k < results.size(); ++k)
        if (better(results[k], best)) best = results[k];

    best.solution = evaluate_tour(def, best.x, env);
    if (def.objective == TourObjective::fuel) {
        best.objective = best.solution.dv_total;
        best.constraint_value = best.solution.tof_total;
        best.constraint_bound = def.tof_max_s;
    } else {
        best.objective = best.solution.tof_total;
        best.constraint_value = best.solution.dv_total;
        best.constraint_bound = def.dv_max_kms;
    }
    best.constraint_active =
        best.feasible &&
        best.constraint_value >= 0.995 * best.constraint_bound;
    return best;
}

}  // namespace detour
