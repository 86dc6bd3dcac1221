#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace detour {

/// Dormand-Prince 5(4) adaptive step integrator over a fixed-size state.
/// Steps from t0 to t1 (t1 > t0), calling deriv(t, y, dydt).
template <size_t N>
struct Rk45 {
    using State = std::array<double, N>;
    using Deriv = std::function<void(double, const State&, State&)>;

    double rtol = 1e-9;
    double atol = 1e-9;
    double max_step = 1e9;
    double min_step = 1e-8;

    double suggested_step = 0.0;  ///< carried between integrate() calls

    void integrate(const Deriv& deriv, double t0, double t1, State& y) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                                c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                                b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                                b6 = 11.0 / 84;
        static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                                e3 = 500.0 / 1113 - 7571.0 / 16695,
                                e4 = 125.0 / 192 - 393.0 / 640,
                                e5 = -2187.0 / 6784 + 92097.0 / 339200,
                                e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        if (t1 <= t0) return;
        double t = t0;
        double h = suggested_step > 0.0 ? std::min(suggested_step, t1 - t0)
                                        : std::min(max_step, t1 - t0);
        State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
        deriv(t, y, k1);

        while (t < t1) {
            h = std::min({h, max_step, t1 - t});
            if (h < min_step) h = min_step;

            for (size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
            deriv(t + c2 * h, ytmp, k2);
            for (size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            deriv(t + c3 * h, ytmp, k3);
            for (size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            deriv(t + c4 * h, ytmp, k4);
            for (size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                      a54 * k4[i]);
            deriv(t + c5 * h, ytmp, k5);
            for (size_t i = 0; i < N; ++i)
                ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                      a64 * k4[i] + a65 * k5[i]);
            deriv(t + h, ytmp, k6);
            for (size_t i = 0; i < N; ++i)
                ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                      b5 * k5[i] + b6 * k6[i]);
            deriv(t + h, ynew, k7);

            double err = 0.0;
            for (size_t i = 0; i < N; ++i) {
                double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                 e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                double r = ei / scale;
                err += r * r;
            }
            err = std::sqrt(err / N);

            if (err <= 1.0 || h <= min_step * 1.0000001) {
                t += h;
                y = ynew;
                k1 = k7;  // FSAL
            }  // on rejection k1 is still the derivative at (t, y)
            double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(factor, 0.2, 5.0);
        }
        suggested_step = h;
    }
};

}  // namespace detour
