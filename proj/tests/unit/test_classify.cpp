#include <cmath>
#include <random>

#include "doctest.h"
#include "wavetrap/classify.hpp"
#include "wavetrap/error.hpp"

using namespace wavetrap;

namespace {
const Profiles kBeta{make_zero_zonal(), make_betaplane(1.0)};
const Profiles kConv{make_bump(0.0, 1.0, 0.5), make_betaplane(1.0)};
const Profiles kSigned{make_signed_zonal(0.3, 2.0), make_betaplane(1.0)};

PhasePoint singular_seed(double xi1, double x2) {
    const double rho = -1.0 / kSigned.zonal.value(x2) - x2 * x2;
    return PhasePoint(0.0, xi1, x2, std::sqrt(rho - xi1 * xi1));
}
}  // namespace

TEST_CASE("betaplane examples") {
    const Classification c = classify(PhasePoint(0, 1, 0, 1), kBeta);
    REQUIRE(c.is<cls::Periodic>());
    CHECK(c.as<cls::Periodic>().period == doctest::Approx(4 * std::numbers::pi).epsilon(1e-10));
    CHECK(c.as<cls::Periodic>().xmin == doctest::Approx(-1.0));
    CHECK(c.as<cls::Periodic>().xmax == doctest::Approx(1.0));
    CHECK(c.name() == "periodic");

    const Classification f = classify(PhasePoint(0, 1, 0, 0), kBeta);
    REQUIRE(f.is<cls::FixedPoint>());
    CHECK(f.as<cls::FixedPoint>().x2 == 0.0);
}

TEST_CASE("asymptotic example") {
    const Classification c = classify(singular_seed(-1.5, -0.5), kSigned);
    CHECK(c.tau == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(c.is<cls::Asymptotic>());
    const auto& a = c.as<cls::Asymptotic>();
    CHECK(std::abs(a.x2_inf) < 1e-8);
    CHECK(a.side == +1);
    CHECK(std::abs(kSigned.zonal.value(a.x2_inf) * -1.5 - c.tau) < 1e-8);
}

TEST_CASE("sigma margin") {
    // no critical points of b and no current: only the fixed-point residual
    const SigmaMargin m = sigma_margin(PhasePoint(0, 1, 0.3, 0.7), kBeta);
    CHECK(std::isinf(m.coriolis_critical));
    CHECK(std::isinf(m.zonal_extremum));
    CHECK(std::isfinite(m.fixed_point));

    // condition (c) at the bump maximum y = 0 gives |τ − ξ1 ū1(0)|
    const PhasePoint p(0, 2.0, 0.5, 0.3);
    const double tau = rossby_symbol(2.0, 0.5, 0.3, kConv);
    CHECK(sigma_margin(p, kConv).zonal_extremum == doctest::Approx(std::abs(tau - 2.0 * 0.5)));

    // exactly on a fixed point
    const Classification c = classify(PhasePoint(0, 1, 0, 0), kBeta);
    CHECK(c.margin.overall() < 1e-12);
}

TEST_CASE("near-sigma flag") {
    // τ at distance 1e-8 from the bump-maximum condition
    const double xi1 = 1.0;
    const PhasePoint p(0, xi1, 0.0, std::sqrt(1.0 / (0.5 + 1e-8 - 0.5) - 1.0));
    const Classification c = classify(p, kConv);
    CHECK(c.margin.overall() < 1e-6);
    if (c.is<cls::NearSigma>())
        CHECK(c.as<cls::NearSigma>().margin < 1e-6);
    else
        CHECK_FALSE((c.is<cls::Periodic>() || c.is<cls::Asymptotic>()));
}

TEST_CASE("classification agrees with direct integration") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> x(-1.5, 1.5), s(-1.5, 1.5);
    int periodic = 0, asymptotic = 0;
    for (int i = 0; i < 40; ++i) {
        const PhasePoint p(0.0, 1.0, x(gen), s(gen));
        const Classification c = classify(p, kConv);
        if (c.margin.overall() < 1e-3)
            continue;
        if (c.is<cls::Periodic>() && periodic < 8) {
            ++periodic;
            const double t = c.as<cls::Periodic>().period;
            const Trajectory traj = integrate(p, t, kConv, {.sample_interval = t});
            CHECK(std::abs(traj.back().state.x2() - p.x2()) < 1e-5);
            CHECK(std::abs(traj.back().state.xi2() - p.xi2()) < 1e-5);
        } else if (c.is<cls::Asymptotic>() && asymptotic < 8) {
            ++asymptotic;
            const double xinf = c.as<cls::Asymptotic>().x2_inf;
            const Trajectory traj = integrate(p, 1000.0, kConv, {.sample_interval = 10.0});
            CHECK(std::abs(traj.back().state.x2() - xinf) < 1e-3);
        }
    }
    CHECK(periodic > 0);
    CHECK(asymptotic > 0);
}

TEST_CASE("openness of the periodic and asymptotic classes") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> x(-1.5, 1.5), s(-1.5, 1.5);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 100; ++i) {
        const PhasePoint p(0.0, 1.0, x(gen), s(gen));
        const Classification c = classify(p, kConv);
        if (c.margin.overall() < 1e-3)
            continue;
        const Classification d = classify(PhasePoint(0.0, 1.0, p.x2() + 1e-6, p.xi2() + 1e-6), kConv);
        REQUIRE(d.name() == c.name());
        if (c.is<cls::Periodic>()) {
            const double t = c.as<cls::Periodic>().period;
            CHECK(std::abs(d.as<cls::Periodic>().period - t) / t < 1e-3);
        } else if (c.is<cls::Asymptotic>()) {
            CHECK(std::abs(d.as<cls::Asymptotic>().x2_inf - c.as<cls::Asymptotic>().x2_inf) < 1e-4);
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("asymptotic rates") {
    const PhasePoint p = singular_seed(-1.5, -0.5);
    const Trajectory traj = integrate(p, 1000.0, kSigned, {.sample_interval = 1.0});
    const AsymptoticRates r = asymptotic_rates(traj, 0.0, kSigned);
    CHECK(std::abs(r.exponent + 2.0) < 0.1);
    CHECK(r.xi2_r2 > 0.999);
    CHECK(r.consistency < 0.05);

    const Trajectory periodic =
        integrate(PhasePoint(0, 1, 0, 1), 100.0, kBeta, {.sample_interval = 0.5});
    CHECK_THROWS_AS(asymptotic_rates(periodic, 1.0, kBeta), Error);
}
