#include <gtest/gtest.h>

#include <random>

#include "detour/math.hpp"
#include "detour/time.hpp"

using namespace detour;

TEST(Angles, WrapTwoPi) {
    EXPECT_DOUBLE_EQ(wrap_two_pi(0.0), 0.0);
    EXPECT_NEAR(wrap_two_pi(-0.1), kTwoPi - 0.1, 1e-15);
    EXPECT_NEAR(wrap_two_pi(7.0 * kPi), kPi, 1e-12);
    EXPECT_NEAR(minor_arc(0.1, kTwoPi - 0.1), 0.2, 1e-12);
    EXPECT_NEAR(minor_arc(3.0, 3.0 + kTwoPi), 0.0, 1e-7);
}

TEST(Kepler, RoundTripAnomalies) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> em(0.0, 0.9), an(-kPi, kPi);
    for (int k = 0; k < 10000; ++k) {
        double e = em(rng), m = an(rng);
        double ea = eccentric_from_mean(m, e);
        EXPECT_NEAR(mean_from_eccentric(ea, e), m, 1e-12);
        double nu = true_from_eccentric(ea, e);
        EXPECT_NEAR(eccentric_from_true(nu, e), ea, 1e-12);
    }
}

TEST(Time, JulianDateKnownValues) {
    // J2000 reference epoch.
    EXPECT_DOUBLE_EQ(julian_date(2000, 1, 1, 12, 0, 0.0), 2451545.0);
    // Vallado, example 3-4: 1996-10-26 14:20:00 -> JD 2450383.09722222.
    EXPECT_NEAR(julian_date(1996, 10, 26, 14, 20, 0.0), 2450383.0972222222, 1e-7);
}

TEST(Time, LaunchEpochAndTleEpochAgree) {
    // 2022-03-25 06:37:09 is day-of-year 84.27579861 of 2022.
    double from_calendar = parse_utc("2022-03-25 06:37:09");
    double from_tle = epoch_from_tle(22, 84.27579861111);
    EXPECT_NEAR(from_calendar, from_tle, 1e-3);
    EXPECT_GT(from_calendar, 0.0);
}
