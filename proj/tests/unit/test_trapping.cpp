#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/trapping.hpp"

using namespace wavetrap;

namespace {
const Profiles kBeta{make_zero_zonal(), make_betaplane(1.0)};
const Profiles kConv{make_bump(0.0, 1.0, 0.5), make_betaplane(1.0)};
const Profiles kSigned{make_signed_zonal(0.3, 2.0), make_betaplane(1.0)};
const Profiles kPer{make_bump(0.0, 0.4, 0.5), make_betaplane(1.0)};
}  // namespace

TEST_CASE("betaplane drift closed form") {
    const TrappingVerdict t = drift_velocity(PhasePoint(0, 1, 0, 1), kBeta);
    CHECK(t.trapped);
    CHECK(std::abs(t.drift) < 1e-9);
    CHECK(t.method == DriftMethod::PeriodAverage);

    const TrappingVerdict d = drift_velocity(PhasePoint(0, 1, 0, std::sqrt(2.0)), kBeta);
    CHECK_FALSE(d.trapped);
    CHECK(d.drift == doctest::Approx(1.0 / 9.0).epsilon(1e-8));
}

TEST_CASE("drift scaling covariance") {
    for (double xi1 : {0.7, 1.3})
        for (double r : {0.5, 1.8}) {
            const double base = drift_velocity(PhasePoint(0, xi1, 0, r), kBeta).drift;
            for (double lam : {0.5, 2.0}) {
                const double scaled = drift_velocity(PhasePoint(0, lam * xi1, 0, lam * r), kBeta).drift;
                CHECK(scaled == doctest::Approx(base / (lam * lam)).epsilon(1e-6));
            }
        }
}

TEST_CASE("asymptotic drift is the current at the limit") {
    const double x2 = -0.5, xi1 = -1.5;
    const double rho_v = rho(x2, kSigned);
    const TrappingVerdict v = drift_velocity(PhasePoint(0, xi1, x2, std::sqrt(rho_v - xi1 * xi1)), kSigned);
    CHECK(v.method == DriftMethod::AsymptoticLimit);
    CHECK(std::abs(v.drift) < 1e-8);
    CHECK(v.trapped);
}

TEST_CASE("pathological classes have no drift") {
    CHECK_THROWS_AS(drift_velocity(PhasePoint(0, 1, 0, 0), kBeta), Error);
}

TEST_CASE("critper examples") {
    CHECK(std::abs(critper(bracket(0.5, 1.0, 0.0, kBeta))) < 1e-8);
    CHECK(critper(bracket(0.4, 1.0, 0.0, kBeta)) ==
          doctest::Approx(-0.25 * std::numbers::pi).epsilon(1e-10));
    CHECK_THROWS_AS(critper(bracket(0.0, -1.5, -0.5, kSigned)), Error);
}

TEST_CASE("critper and period-average drift share their zero set") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> x(-1.2, 1.2), s(-1.5, 1.5), k(0.5, 2.0);
    int cases = 0;
    for (int i = 0; i < 400 && cases < 50; ++i) {
        const PhasePoint p(0.0, k(gen), x(gen), s(gen));
        const Classification c = classify(p, kConv);
        if (!c.is<cls::Periodic>())
            continue;
        ++cases;
        const double cp = critper(c.report);
        const double drift = drift_velocity(p, c, kConv).drift;
        // b' = 1 > 0: drift·T = −2 critper / |ξ1|
        if (std::abs(cp) < 1e-6 && std::abs(drift) < 1e-6)
            continue;
        CHECK((cp > 0) == (drift < 0));
        const TrappingVerdict q = drift_from_critper(c.report);
        CHECK(q.drift == doctest::Approx(drift).epsilon(1e-6));
    }
    CHECK(cases == 50);
}

TEST_CASE("h of xi1 and the singular seeds") {
    const auto lobe = find_negative_lobe(kSigned.zonal);
    REQUIRE(lobe);
    const double n = rho_floor(*lobe, kSigned);
    CHECK(n > 0.0);
    // independent grid estimate of N
    double grid_min = 1e300;
    for (double y : GridSpec{lobe->y1 + 1e-2, lobe->y2 - 1e-3, 20001}.points())
        grid_min = std::min(grid_min, rho(y, kSigned));
    CHECK(n <= grid_min + 1e-12);
    CHECK(n == doctest::Approx(grid_min).epsilon(1e-6));

    CHECK_THROWS_AS(h_of_xi1(std::sqrt(n) * 0.9, *lobe, kSigned), Error);

    const double h = h_of_xi1(2.0, *lobe, kSigned);
    CHECK(h < lobe->y2);
    CHECK(rho(h, kSigned) == doctest::Approx(4.0).epsilon(1e-8));
    for (double y : GridSpec{h + 1e-6, lobe->y2 - 1e-6, 200}.points())
        CHECK(rho(y, kSigned) > 4.0);

    // a larger ξ1² widens the sublevel set, so its supremum cannot drop
    double prev = h_of_xi1(std::sqrt(n) * 1.01, *lobe, kSigned);
    for (double xi1 : {2.0, 2.5, 3.0, 4.0}) {
        const double cur = h_of_xi1(-xi1, *lobe, kSigned);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }

    const PhasePoint p = lambda_sing_point(0.0, -2.0, 0.5 * (h + lobe->y2), *lobe, kSigned);
    CHECK(std::abs(rossby_symbol(p.xi1(), p.x2(), p.xi2(), kSigned)) < 1e-12);
    CHECK(p.xi2() > 0.0);
    CHECK_THROWS_AS(lambda_sing_point(0.0, -2.0, h - 0.1, *lobe, kSigned), Error);
}

TEST_CASE("periodic construction") {
    const LambdaPerSetup s = make_lambda_per_setup(kPer);
    CHECK(s.eta == 0.2);
    CHECK(s.delta == doctest::Approx(1 - 0.04 / 8));
    CHECK(lambda_per_G(1.0, s, kPer).g > 0.0);
    CHECK(lambda_per_G(50.0, s, kPer).g < 0.0);
    CHECK_THROWS_AS(make_lambda_per_setup(kConv), Error);

    // G against the midpoint oracle
    const GValue g = lambda_per_G(2.0, s, kPer);
    const double tau = g.tau, xi1 = 2.0, k = tau / xi1;
    auto u = [](double y) { return oracle::bump(y, 0, 0.4, 0.5); };
    auto integrand = [&](double y) { return xi1 * xi1 - k / (2 * (k - u(y)) * (k - u(y))); };
    auto v = [&](double y) { return xi1 / (tau - u(y) * xi1) - xi1 * xi1 - y * y; };
    CHECK(g.g == doctest::Approx(oracle::band_integral(integrand, v, g.xmin, g.xmax)).epsilon(1e-6));

    for (double xi1 : {1.5, 5.0, 20.0, 45.0})
        CHECK(std::abs(lambda_per_G(xi1 + 1e-4, s, kPer).g - lambda_per_G(xi1, s, kPer).g) < 1e-2);
}

TEST_CASE("scan rows") {
    ScanGrid grid{{1.0, 1.0, 1}, {0.0, 0.0, 1}, {0.5, 2.0, 31}};
    const auto rows = scan_lambda(grid, kBeta, {.drift = {}, .threads = 2});
    REQUIRE(rows.size() == 31);
    for (const ScanRow& r : rows) {
        CHECK(r.error.empty());
        CHECK(r.trapped == (std::abs(r.xi2_0 - 1.0) < 1e-3));
        if (r.margin > 1e-6)
            CHECK((r.cls == "periodic" || r.cls == "asymptotic"));
    }
    const auto again = scan_lambda(grid, kBeta, {.drift = {}, .threads = 1});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].xi2_0 == again[i].xi2_0);
        CHECK(rows[i].cls == again[i].cls);
        CHECK((rows[i].drift == again[i].drift || (std::isnan(rows[i].drift) && std::isnan(again[i].drift))));
    }
}
