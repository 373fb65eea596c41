#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/reduced_phase.hpp"
#include "wavetrap/rossby_dynamics.hpp"

using namespace wavetrap;

namespace {
const Profiles kBeta{make_zero_zonal(), make_betaplane(1.0)};
const Profiles kConv{make_bump(0.0, 1.0, 0.5), make_betaplane(1.0)};
}  // namespace

TEST_CASE("potential reproduces xi2 squared on the energy surface") {
    for (double x2 : {-0.7, 0.0, 0.4})
        for (double xi2 : {-1.1, 0.3, 0.9}) {
            const double tau = rossby_symbol(1.3, x2, xi2, kConv);
            CHECK(potential(tau, 1.3, x2, kConv) == doctest::Approx(xi2 * xi2).epsilon(1e-12));
        }
}

TEST_CASE("potential derivative matches finite differences") {
    const double tau = 1.1, xi1 = 1.4;
    auto v = [&](double y) { return potential(tau, xi1, y, kConv); };
    for (double y : {-0.6, -0.2, 0.1, 0.5})
        CHECK(potential_jet(tau, xi1, y, kConv).d1 ==
              doctest::Approx(oracle::central(v, y, 1e-4)).epsilon(1e-7));
    CHECK_THROWS_AS(potential(0.0, 1.0, 2.0, kConv), Error);
}

TEST_CASE("betaplane circle brackets") {
    const PotentialReport r = bracket(0.5, 1.0, 0.0, kBeta);
    CHECK(r.periodic());
    CHECK(r.lower.x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.upper.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.lower.kind == EndpointKind::SimpleZero);
    CHECK(period(r) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("period quadrature agrees with the midpoint oracle") {
    for (double tau : {0.9, 1.1, 1.3}) {
        const double xi1 = 1.0;
        const PotentialReport r = bracket(tau, xi1, 0.0, kConv);
        REQUIRE(r.periodic());
        auto g = [&](double y) {
            const double a = tau - xi1 * oracle::bump(y, 0, 1, 0.5);
            return std::abs(xi1) / (a * a);
        };
        auto v = [&](double y) {
            const double a = tau - xi1 * oracle::bump(y, 0, 1, 0.5);
            return xi1 / a - xi1 * xi1 - y * y;
        };
        CHECK(period(r) ==
              doctest::Approx(oracle::band_integral(g, v, r.lower.x, r.upper.x)).epsilon(1e-6));
    }
}

TEST_CASE("fixed point gives a degenerate bracket") {
    const PotentialReport r = bracket(1.0, 1.0, 0.0, kBeta);
    CHECK(r.degenerate());
    CHECK(r.lower.kind == EndpointKind::DegenerateZero);
}

TEST_CASE("pole endpoints") {
    const Profiles pr{make_signed_zonal(0.3, 2.0), make_betaplane(1.0)};
    const PotentialReport r = bracket(0.0, -1.5, -0.5, pr);
    CHECK(r.upper.kind == EndpointKind::SimplePole);
    CHECK(std::abs(r.upper.x) < 1e-9);
}

TEST_CASE("forbidden start is an error") {
    CHECK_THROWS_AS(bracket(0.5, 1.0, 2.0, kBeta), Error);
}

TEST_CASE("energy surface points") {
    const auto pts = energy_surface_points(0.5, 1.0, {-2, 2, 401}, kBeta);
    REQUIRE_FALSE(pts.empty());
    for (const SurfacePoint& p : pts) {
        CHECK(std::abs(p.x2) <= 1.0 + 1e-12);
        CHECK(p.xi2_plus == doctest::Approx(std::sqrt(std::max(0.0, 1 - p.x2 * p.x2))).epsilon(1e-12));
        CHECK(p.xi2_minus == -p.xi2_plus);
    }
}

TEST_CASE("rho") {
    const Profiles pr{make_signed_zonal(0.3, 2.0), make_betaplane(1.0)};
    const double y = -0.5;
    CHECK(rho(y, pr) == doctest::Approx(-1.0 / pr.zonal.value(y) - 0.25).epsilon(1e-15));
    CHECK_THROWS_AS(rho(0.0, pr), Error);
}
