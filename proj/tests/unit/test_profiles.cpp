#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/profiles.hpp"

using namespace wavetrap;

TEST_CASE("bump values and support") {
    const ZonalProfile u = make_bump(0.2, 0.8, 0.5);
    CHECK(u.value(0.2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u.value(1.0) == 0.0);
    CHECK(u.value(-0.6) == 0.0);
    const auto s = u.support();
    REQUIRE(s);
    CHECK(s->lo == doctest::Approx(-0.6));
    CHECK(s->hi == doctest::Approx(1.0));
    for (double y : GridSpec{-0.55, 0.95, 31}.points())
        CHECK(u.value(y) == doctest::Approx(oracle::bump(y, 0.2, 0.8, 0.5)).epsilon(1e-14));
}

TEST_CASE("zonal derivatives agree with finite differences") {
    for (const ZonalProfile& u : {make_bump(0.0, 1.0, 0.5), make_signed_zonal(0.3, 2.0)}) {
        const auto f = [&](double y) { return u.value(y); };
        const auto df = [&](double y) { return u.eval(y).d1; };
        for (double y : GridSpec{-0.9, 0.9, 37}.points()) {
            const Jet j = u.eval(y);
            CHECK(j.d1 == doctest::Approx(oracle::central(f, y, 1e-4)).epsilon(1e-7));
            CHECK(j.d2 == doctest::Approx(oracle::central(df, y, 1e-4)).epsilon(1e-7));
        }
    }
}

TEST_CASE("signed zonal has an order-one zero at the origin") {
    const ZonalProfile u = make_signed_zonal(0.3, 2.0);
    CHECK(u.value(0.0) == 0.0);
    CHECK(u.eval(0.0).d1 == doctest::Approx(0.3));
    CHECK(u.value(-1.0) < 0.0);
    CHECK(u.value(1.0) > 0.0);
    const auto lobe = find_negative_lobe(u);
    REQUIRE(lobe);
    CHECK(lobe->y1 == doctest::Approx(-2.0).epsilon(1e-3));
    CHECK(std::abs(lobe->y2) < 1e-9);
    CHECK_FALSE(find_negative_lobe(make_bump(0, 1, 0.5)));
}

TEST_CASE("betaplane and polynomial Coriolis") {
    const CoriolisProfile beta = make_betaplane(2.0);
    REQUIRE(beta.betaplane_slope());
    CHECK(*beta.betaplane_slope() == 2.0);
    CHECK(beta.value(1.5) == 3.0);
    CHECK(beta.eval(1.5).d1 == 2.0);
    CHECK(beta.critical_points().empty());

    const CoriolisProfile cubic = make_polynomial_coriolis({0.0, -1.0, 0.0, 1.0});
    CHECK_FALSE(cubic.betaplane_slope());
    const auto cp = cubic.critical_points();
    REQUIRE(cp.size() == 2);
    CHECK(cp[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
    CHECK(cp[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
    const Jet j = cubic.eval(2.0);
    CHECK(j.value == 6.0);
    CHECK(j.d1 == 11.0);
    CHECK(j.d2 == 12.0);
}

TEST_CASE("symbol condition and growth") {
    const CoriolisProfile beta = make_betaplane(1.0);
    const auto rep = check_symbol_condition(beta, 2, {-100, 100, 2001});
    REQUIRE(rep.max_ratio.size() == 3);
    CHECK(rep.max_ratio[0] <= 1.0);
    CHECK(rep.max_ratio[2] == 0.0);
    CHECK(coriolis_grows_at_infinity(beta));
}

TEST_CASE("invalid profile parameters are rejected") {
    CHECK_THROWS_AS(make_bump(0, -1, 1), Error);
    CHECK_THROWS_AS(make_betaplane(0.0), Error);
    CHECK_THROWS_AS(make_polynomial_coriolis({}), Error);
}
