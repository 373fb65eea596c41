#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/rossby_dynamics.hpp"

using namespace wavetrap;

namespace {

Profiles convective() { return {make_bump(0.0, 1.0, 0.5), make_betaplane(1.0)}; }

oracle::Field convective_field() {
    return {[](double y) { return oracle::bump(y, 0.0, 1.0, 0.5); }, [](double y) { return y; }};
}

}  // namespace

TEST_CASE("symbol examples") {
    const Profiles beta{make_zero_zonal(), make_betaplane(1.0)};
    CHECK(rossby_symbol(1.0, 0.0, 1.0, beta) == 0.5);
    CHECK(rossby_symbol(2.0, 0.0, 0.0, convective()) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(PhasePoint(0, 0, 0, 0), Error);
}

TEST_CASE("vector field is the Hamiltonian gradient of the symbol") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> x(-1.5, 1.5), k(0.3, 3.0), s(-2.0, 2.0);
    const Profiles pr = convective();
    const oracle::Field f = convective_field();
    for (int i = 0; i < 200; ++i) {
        const PhasePoint p(0.0, (i % 2 ? -1 : 1) * k(gen), x(gen), s(gen));
        const VectorField v = rossby_vector_field(p, pr);
        const auto ref = oracle::hamilton(f, p.xi1(), p.x2(), p.xi2());
        CHECK(v.dx1 == doctest::Approx(ref[0]).epsilon(1e-6));
        CHECK(v.dx2 == doctest::Approx(ref[1]).epsilon(1e-6));
        CHECK(v.dxi2 == doctest::Approx(ref[2]).epsilon(1e-6));
    }
}

TEST_CASE("poincare field matches its symbol") {
    const Profiles pr{make_zero_zonal(), make_polynomial_coriolis({0.2, 1.0, 0.0, 0.3})};
    const PhasePoint p(0.0, 1.3, 0.4, -0.7);
    for (Mode m : {Mode::PoincarePlus, Mode::PoincareMinus}) {
        const VectorField v = mode_vector_field(m, p, pr);
        auto e = [&](double xi1, double x2, double xi2) { return mode_energy(m, xi1, x2, xi2, pr); };
        const double h = 1e-6;
        CHECK(v.dx1 == doctest::Approx((e(1.3 + h, 0.4, -0.7) - e(1.3 - h, 0.4, -0.7)) / (2 * h)).epsilon(1e-7));
        CHECK(v.dx2 == doctest::Approx((e(1.3, 0.4, -0.7 + h) - e(1.3, 0.4, -0.7 - h)) / (2 * h)).epsilon(1e-7));
        CHECK(v.dxi2 == doctest::Approx(-(e(1.3, 0.4 + h, -0.7) - e(1.3, 0.4 - h, -0.7)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("integrator agrees with an independent RK4 flow") {
    const Profiles pr = convective();
    const PhasePoint p0(0.0, 1.2, -0.3, 0.6);
    const double t = 5.0;
    const Trajectory traj = integrate(p0, t, pr, {.sample_interval = t});
    REQUIRE(traj.termination == Termination::Horizon);
    const auto ref = oracle::rk4(convective_field(), 1.2, {0.0, -0.3, 0.6}, t, 4000);
    const PhasePoint& end = traj.back().state;
    CHECK(traj.back().t == t);
    CHECK(end.x1() == doctest::Approx(ref[0]).epsilon(1e-7));
    CHECK(end.x2() == doctest::Approx(ref[1]).epsilon(1e-7));
    CHECK(end.xi2() == doctest::Approx(ref[2]).epsilon(1e-7));
}

TEST_CASE("energy is conserved") {
    const Profiles pr = convective();
    const Trajectory traj = integrate(PhasePoint(0.0, 1.0, 0.2, 0.5), 100.0, pr);
    CHECK(traj.invariant_drift / std::abs(traj.initial_energy) < 1e-8);
}

TEST_CASE("time reversal returns to the start") {
    const Profiles pr = convective();
    const PhasePoint p0(0.3, -0.8, 0.1, 0.9);
    const double t = 20.0;
    const Trajectory fwd = integrate(p0, t, pr, {.sample_interval = t});
    const Trajectory back =
        integrate(fwd.back().state, t, pr, {.sample_interval = t, .backward = true});
    const PhasePoint& q = back.back().state;
    CHECK(back.back().t == -t);
    CHECK(std::abs(q.x1() - p0.x1()) < 1e-7);
    CHECK(std::abs(q.x2() - p0.x2()) < 1e-7);
    CHECK(std::abs(q.xi2() - p0.xi2()) < 1e-7);
}

TEST_CASE("uniform sampling and wind-up") {
    const Profiles pr{make_zero_zonal(), make_betaplane(1.0)};
    const Trajectory traj = integrate(PhasePoint(2.0, 1.0, 0.0, 1.0), 10.0, pr, {.sample_interval = 0.5});
    REQUIRE(traj.samples.size() == 21);
    for (std::size_t i = 0; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].t == doctest::Approx(0.5 * i));
    const auto w = wind_up_x1(traj);
    CHECK(w.front() == 0.0);
    CHECK(std::abs(w.back()) < 1e-6);
}

TEST_CASE("events") {
    const Profiles pr{make_zero_zonal(), make_betaplane(1.0)};
    // rotation with period 4π; ξ2 = cos-like, first sign change at π
    EventSpec ev;
    ev.xi2_sign_change = true;
    ev.stop_after_sign_changes = 2;
    const Trajectory traj = integrate(PhasePoint(0, 1, 0, 1), 100.0, pr, {}, ev);
    CHECK(traj.termination == Termination::Event);
    REQUIRE(traj.events.size() == 2);
    CHECK(traj.events[0].t == doctest::Approx(std::numbers::pi).epsilon(1e-8));
    CHECK(traj.events[1].t == doctest::Approx(3 * std::numbers::pi).epsilon(1e-8));

    EventSpec marker;
    marker.x2_marker = 0.5;
    const Trajectory m = integrate(PhasePoint(0, 1, 0, 1), 100.0, pr, {}, marker);
    REQUIRE(m.termination == Termination::Event);
    CHECK(std::abs(m.events.back().state.x2() - 0.5) < 1e-6);
}

TEST_CASE("xi2 cap ends the run") {
    const Profiles pr{make_signed_zonal(0.3, 2.0), make_betaplane(1.0)};
    const double x2 = -0.5;
    const double rho = -1.0 / pr.zonal.value(x2) - x2 * x2;
    const PhasePoint p(0.0, -1.5, x2, std::sqrt(rho - 2.25));
    const Trajectory traj = integrate(p, 1e6, pr, {.xi2_cap = 50.0});
    CHECK(traj.termination == Termination::Event);
    CHECK(std::abs(traj.back().state.xi2()) == doctest::Approx(50.0).epsilon(1e-6));
}

TEST_CASE("betaplane trapped circle stays put") {
    const Profiles pr{make_zero_zonal(), make_betaplane(1.0)};
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory traj = integrate(PhasePoint(0, 1, 0, 1), 1000.0, pr, {.sample_interval = 0.1});
    double dev = 0;
    for (const Sample& s : traj.samples)
        dev = std::max(dev, std::abs(s.state.x1()));
    CHECK(dev < 1e-5);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
}
