#include "wavetrap/spectral_poincare.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "wavetrap/error.hpp"
#include "wavetrap/reduced_phase.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "spectral_poincare";

double b2(const CoriolisProfile& c, double y) {
    const double b = c.value(y);
    return b * b;
}

// Half-width of a window holding every real root and critical point of b.
double search_radius(const CoriolisProfile& c) {
    const auto co = c.coefficients();
    const double lead = co.back();
    double bound = 0.0;
    for (std::size_t k = 0; k + 1 < co.size(); ++k)
        bound = std::max(bound, std::abs(co[k] / lead));
    return std::max(bound + 1.0, c.scale()) + 1.0;
}

}  // namespace

ActionProfile::ActionProfile(CoriolisProfile coriolis, QuadOptions quad)
    : coriolis_(std::move(coriolis)), quad_(quad) {
    const double w = search_radius(coriolis_);
    const GridSpec grid{-w, w, 20001};
    const std::vector<double> ys = grid.points();
    std::vector<double> vals(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i)
        vals[i] = b2(coriolis_, ys[i]);

    std::size_t best = 0;
    int minima = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (vals[i] < vals[best])
            best = i;
        if (i > 0 && i + 1 < ys.size() && vals[i] < vals[i - 1] && vals[i] <= vals[i + 1])
            ++minima;
    }
    single_well_ = minima <= 1;
    const double lo = ys[best > 0 ? best - 1 : 0];
    const double hi = ys[std::min(best + 1, ys.size() - 1)];
    const auto [x, v] =
        boost::math::tools::brent_find_minima([&](double y) { return b2(coriolis_, y); }, lo, hi, 52);
    argmin_ = v <= vals[best] ? x : ys[best];
    min_b2_ = std::min(v, vals[best]);
}

Interval ActionProfile::turning_points(double h) const {
    if (!(h > min_b2_))
        fail(ErrorCode::BelowWell, kModule,
             "h = " + std::to_string(h) + " is not above min b^2 = " + std::to_string(min_b2_));
    auto inside = [&](double y) { return b2(coriolis_, y) < h; };
    auto edge = [&](int dir) {
        double step = 1.0;
        double out = argmin_ + dir * step;
        while (inside(out)) {
            step *= 2.0;
            out = argmin_ + dir * step;
        }
        return bisect_boundary(inside, argmin_, out);
    };
    return {edge(-1), edge(+1)};
}

double ActionProfile::action(double h) const {
    const Interval tp = turning_points(h);
    if (!single_well_) {
        const double w = search_radius(coriolis_);
        const Interval window{std::min(tp.lo, -w) - 1.0, std::max(tp.hi, w) + 1.0};
        const auto roots = zeros_in([&](double y) { return b2(coriolis_, y) - h; }, window);
        if (roots.size() > 2)
            fail(ErrorCode::MultiWell, kModule,
                 std::to_string(roots.size()) + " turning points at h = " + std::to_string(h));
    }
    auto g = [&](double y) { return std::sqrt(std::max(0.0, h - b2(coriolis_, y))); };
    return 2.0 * integrate_sine_substituted(g, tp, quad_);
}

double ActionProfile::action_slope(double h) const {
    const Interval tp = turning_points(h);
    auto slope_at = [&](double y) {
        const Jet b = coriolis_.eval(y);
        return -2.0 * b.value * b.d1;
    };
    return detail::integrate_over_band([](double) { return 1.0; },
                                       [&](double y) { return h - b2(coriolis_, y); }, tp,
                                       slope_at(tp.lo), slope_at(tp.hi), quad_);
}

double ActionProfile::energy_for_action(double target) const {
    require(target > 0.0, kModule, "action target must be positive");
    double lo = min_b2_;
    double width = 1.0;
    while (action(lo + width) < target)
        width *= 2.0;
    double hi = lo + width;
    // coarse bisection, then safeguarded Newton
    while (hi - lo > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        (action(mid) < target ? lo : hi) = mid;
    }
    auto f = [&](double h) { return std::make_pair(action(h) - target, action_slope(h)); };
    std::uintmax_t iters = 50;
    return boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 50, iters);
}

double action_integral(double h, const CoriolisProfile& coriolis) {
    return ActionProfile(coriolis).action(h);
}

double bohr_sommerfeld(double eps, int n, const ActionProfile& action) {
    require(eps > 0.0, kModule, "eps must be positive");
    require(n >= 0, kModule, "quantum index must be non-negative");
    return action.energy_for_action(2.0 * std::numbers::pi * eps * (n + 0.5));
}

double bohr_sommerfeld(double eps, int n, const CoriolisProfile& coriolis) {
    return bohr_sommerfeld(eps, n, ActionProfile(coriolis));
}

int eigenvalue_count(double energy, double eps, const ActionProfile& action) {
    require(eps > 0.0, kModule, "eps must be positive");
    if (energy <= action.well_bottom())
        return 0;
    const double q = action.action(energy) / (2.0 * std::numbers::pi * eps);
    return q <= 0.5 ? 0 : static_cast<int>(std::ceil(q - 0.5));
}

DispersionTriple dispersion_roots(double xi1, int n, double eps, double beta) {
    require(xi1 != 0.0 && eps > 0.0 && beta != 0.0 && n >= 0, kModule,
            "dispersion needs xi1 != 0, eps > 0, beta != 0, n >= 0");
    const double p = -(xi1 * xi1 + beta * eps * (2.0 * n + 1.0));
    const double q = eps * beta * xi1;
    if (!(p < 0.0) || 4.0 * p * p * p + 27.0 * q * q >= 0.0)
        fail(ErrorCode::ComplexRoots, kModule, "dispersion cubic has complex roots");

    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::array<double, 3> r;
    for (int k = 0; k < 3; ++k) {
        double t = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
        const double fp = 3.0 * t * t + p;
        if (fp != 0.0)
            t -= (t * t * t + p * t + q) / fp;
        r[k] = t;
    }
    std::sort(r.begin(), r.end());
    return {r[0], r[1], r[2], xi1, n, eps, beta};
}

double rossby_root_asymptotics(double xi1, int n, double eps, double beta) {
    const DispersionTriple d = dispersion_roots(xi1, n, eps, beta);
    const double approx = eps * beta * xi1 / (xi1 * xi1 + beta * eps * (2.0 * n + 1.0));
    return std::abs(d.tau_r - approx) / std::abs(d.tau_r);
}

double group_speed(double xi1, double lambda, double dlambda_dxi1) {
    require(lambda + xi1 * xi1 > 0.0, kModule, "group speed needs lambda + xi1^2 > 0");
    return std::abs(2.0 * xi1 + dlambda_dxi1) / (2.0 * std::sqrt(lambda + xi1 * xi1));
}

}  // namespace wavetrap
