#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "detour/elements.hpp"
#include "detour/environment.hpp"

using namespace detour;

namespace {

const Environment kEnv{};

// Independently coded inverse (elements from state) used as the round-trip
// oracle: a different formulation than the library's, built from the direct
// geometric definitions term by term.
ClassicalElements oracle_elements(const CartesianState& s, double mu) {
    Vec3 r = s.position, v = s.velocity;
    double rn = r.norm();
    Vec3 h = r.cross(v);
    Vec3 k{0.0, 0.0, 1.0};
    Vec3 n = k.cross(h);
    double a = 1.0 / (2.0 / rn - v.dot(v) / mu);
    Vec3 evec = ((v.dot(v) - mu / rn) * r - r.dot(v) * v) / mu;
    double e = evec.norm();
    double i = std::acos(h.z / h.norm());
    double raan = std::acos(std::clamp(n.x / n.norm(), -1.0, 1.0));
    if (n.y < 0.0) raan = kTwoPi - raan;
    double argp = std::acos(std::clamp(n.dot(evec) / (n.norm() * e), -1.0, 1.0));
    if (evec.z < 0.0) argp = kTwoPi - argp;
    double nu = std::acos(std::clamp(evec.dot(r) / (e * rn), -1.0, 1.0));
    if (r.dot(v) < 0.0) nu = kTwoPi - nu;
    ClassicalElements el;
    el.a = a; el.e = e; el.i = i; el.raan = raan; el.argp = argp; el.nu = nu;
    el.epoch = s.epoch;
    return el;
}

}  // namespace

TEST(Elements, CircularEquatorialAtNode) {
    ClassicalElements el;
    el.a = 7000.0;
    CartesianState s = elements_to_cartesian(el, kEnv.mu);
    EXPECT_NEAR(s.position.x, 7000.0, 1e-9);
    EXPECT_NEAR(s.position.y, 0.0, 1e-9);
    EXPECT_NEAR(s.position.z, 0.0, 1e-9);
    EXPECT_NEAR(s.velocity.norm(), std::sqrt(kEnv.mu / 7000.0), 1e-12);
}

TEST(Elements, ApoapsisRadius) {
    ClassicalElements el;
    el.a = 7000.0;
    el.e = 0.1;
    el.nu = kPi;
    CartesianState s = elements_to_cartesian(el, kEnv.mu);
    EXPECT_NEAR(s.position.norm(), 7700.0, 1e-9);
}

TEST(Elements, EnergyAndAngularMomentumConsistency) {
    ClassicalElements el;
    el.a = 7100.0; el.e = 0.02; el.i = 1.7; el.raan = 0.4; el.argp = 2.2; el.nu = 1.1;
    CartesianState s = elements_to_cartesian(el, kEnv.mu);
    double energy = 0.5 * s.velocity.dot(s.velocity) - kEnv.mu / s.position.norm();
    EXPECT_NEAR(energy, -kEnv.mu / (2.0 * el.a), std::abs(energy) * 1e-10);
    double h = s.position.cross(s.velocity).norm();
    double h_expect = std::sqrt(kEnv.mu * el.a * (1.0 - el.e * el.e));
    EXPECT_NEAR(h, h_expect, h_expect * 1e-10);
}

TEST(Elements, RoundTripRandomLeoStates) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> ua(6600.0, 8400.0), ue(0.0, 0.05),
        ui(0.01, kPi - 0.01), uang(0.0, kTwoPi);
    for (int k = 0; k < 10000; ++k) {
        ClassicalElements el;
        el.a = ua(rng); el.e = ue(rng); el.i = ui(rng);
        el.raan = uang(rng); el.argp = uang(rng); el.nu = uang(rng);
        CartesianState s = elements_to_cartesian(el, kEnv.mu);
        ClassicalElements back = cartesian_to_elements(s, kEnv.mu);
        ClassicalElements check = oracle_elements(s, kEnv.mu);

        EXPECT_NEAR(back.a, el.a, el.a * 1e-9);
        EXPECT_NEAR(back.e, el.e, 1e-9);
        EXPECT_NEAR(back.i, el.i, 1e-9);
        EXPECT_NEAR(minor_arc(back.raan, el.raan), 0.0, 1e-9);
        EXPECT_NEAR(minor_arc(back.argp + back.nu, el.argp + el.nu), 0.0, 2e-7);

        EXPECT_NEAR(check.a, back.a, el.a * 1e-8);
        EXPECT_NEAR(check.e, back.e, 1e-8);
        EXPECT_NEAR(check.i, back.i, 1e-8);
        EXPECT_NEAR(minor_arc(check.raan, back.raan), 0.0, 1e-8);
    }
}

TEST(Elements, SingularConventions) {
    // Equatorial circular state: node and perigee angles resolve to 0.
    ClassicalElements el;
    el.a = 7000.0; el.nu = 1.3;
    CartesianState s = elements_to_cartesian(el, kEnv.mu);
    ClassicalElements back = cartesian_to_elements(s, kEnv.mu);
    EXPECT_DOUBLE_EQ(back.raan, 0.0);
    EXPECT_DOUBLE_EQ(back.argp, 0.0);
    EXPECT_NEAR(back.nu, 1.3, 1e-9);
}

TEST(Elements, HyperbolicRejected) {
    CartesianState s;
    s.position = {7000.0, 0.0, 0.0};
    s.velocity = {0.0, 12.0, 0.0};  // above escape speed
    EXPECT_THROW(cartesian_to_elements(s, kEnv.mu), std::domain_error);
}

TEST(Elements, RtnFrameIsOrthonormal) {
    ClassicalElements el;
    el.a = 7000.0; el.e = 0.01; el.i = 1.71; el.raan = 2.0; el.argp = 1.0; el.nu = 0.5;
    CartesianState s = elements_to_cartesian(el, kEnv.mu);
    RtnFrame f = rtn_frame(s);
    EXPECT_NEAR(f.radial.dot(f.transverse), 0.0, 1e-14);
    EXPECT_NEAR(f.radial.dot(f.normal), 0.0, 1e-14);
    EXPECT_NEAR(f.transverse.norm(), 1.0, 1e-14);
    // transverse points along motion for a circular orbit
    EXPECT_GT(f.transverse.dot(s.velocity), 0.0);
}
