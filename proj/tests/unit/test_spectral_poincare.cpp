#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/spectral_poincare.hpp"

using namespace wavetrap;

TEST_CASE("betaplane action is an ellipse area") {
    for (double beta : {0.5, 1.0, 3.0}) {
        const ActionProfile ap(make_betaplane(beta));
        CHECK(ap.single_well());
        CHECK(ap.well_bottom() == doctest::Approx(0.0));
        for (double h : {0.1, 1.0, 7.0}) {
            CHECK(ap.action(h) == doctest::Approx(std::numbers::pi * h / beta).epsilon(1e-12));
            CHECK(ap.action_slope(h) == doctest::Approx(std::numbers::pi / beta).epsilon(1e-9));
        }
        CHECK_THROWS_AS(ap.action(-1.0), Error);
    }
}

TEST_CASE("quartic well action scaling") {
    // b = y², I(h) ∝ h^{3/4}
    const ActionProfile ap(make_polynomial_coriolis({0.0, 0.0, 1.0}));
    CHECK(ap.action(16.0) / ap.action(1.0) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("action against the midpoint oracle") {
    const CoriolisProfile c = make_polynomial_coriolis({0.3, 1.0, 0.0, 0.2});
    const ActionProfile ap(c);
    const double h = 2.0;
    const Interval tp = ap.turning_points(h);
    auto b2 = [&](double y) { return c.value(y) * c.value(y); };
    auto g = [&](double y) { return h - b2(y); };
    // I = 2∫√(h−b²) = 2∫ (h−b²)/√(h−b²)
    CHECK(ap.action(h) ==
          doctest::Approx(2 * oracle::band_integral(g, g, tp.lo, tp.hi)).epsilon(1e-7));
}

TEST_CASE("double well is refused") {
    const ActionProfile ap(make_polynomial_coriolis({-1.0, 0.0, 1.0}));
    CHECK_FALSE(ap.single_well());
    CHECK_THROWS_AS(ap.action(0.5), Error);
}

TEST_CASE("bohr-sommerfeld betaplane ladder and counts") {
    const ActionProfile ap(make_betaplane(2.0));
    for (int n : {0, 1, 10, 100})
        CHECK(bohr_sommerfeld(0.05, n, ap) == doctest::Approx(2.0 * 0.05 * (2 * n + 1)).epsilon(1e-10));
    CHECK(eigenvalue_count(1.0, 0.1, ap) == 3);
    CHECK(eigenvalue_count(0.0, 0.1, ap) == 0);
    CHECK_THROWS_AS(bohr_sommerfeld(0.0, 1, ap), Error);
}

TEST_CASE("dispersion roots against companion eigenvalues") {
    for (double xi1 : {-2.0, 0.3, 1.0, 4.0})
        for (int n : {0, 3}) {
            const DispersionTriple d = dispersion_roots(xi1, n, 0.1, 1.0);
            const double p = -(xi1 * xi1 + 0.1 * (2 * n + 1)), q = 0.1 * xi1;
            const auto ref = oracle::cubic_roots(p, q);
            CHECK(d.tau_minus == doctest::Approx(ref[0]).epsilon(1e-12));
            CHECK(d.tau_r == doctest::Approx(ref[1]).epsilon(1e-10));
            CHECK(d.tau_plus == doctest::Approx(ref[2]).epsilon(1e-12));
        }
    CHECK(dispersion_roots(1.0, 0, 0.1, 1.0).tau_r == doctest::Approx(0.0916079783).epsilon(1e-9));
    CHECK_THROWS_AS(dispersion_roots(0.0, 0, 0.1, 1.0), Error);
}

TEST_CASE("group speed") {
    CHECK(group_speed(1.0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(group_speed(1.0, 0.5, 0.0) == doctest::Approx(1.0 / std::sqrt(1.5)));
}
