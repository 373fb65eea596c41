#include "wavetrap/trapping.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "trapping";
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double critper_on_band(double tau, double xi1, Interval band, double dv_lo, double dv_hi,
                       const Profiles& profiles, const QuadOptions& quad) {
    const double k = tau / xi1;
    auto g = [&](double y) {
        const double c = k - profiles.zonal.value(y);
        return xi1 * xi1 - k * profiles.coriolis.eval(y).d1 / (2.0 * c * c);
    };
    auto v = [&](double y) {
        const Jet b = profiles.coriolis.eval(y);
        return b.d1 * xi1 / (tau - profiles.zonal.value(y) * xi1) - xi1 * xi1 -
               b.value * b.value;
    };
    return detail::integrate_over_band(g, v, band, dv_lo, dv_hi, quad);
}

// ρ with +∞ where ū1 vanishes, so grid scans can step over underflowed edges.
double rho_or_inf(double y, const Profiles& profiles) {
    if (profiles.zonal.value(y) == 0.0)
        return kInf;
    return rho(y, profiles);
}

std::vector<double> lobe_grid(const NegativeLobe& lobe, std::size_t cells = 10000) {
    std::vector<double> ys(cells);
    const double step = (lobe.y2 - lobe.y1) / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i)
        ys[i] = lobe.y1 + step * (static_cast<double>(i) + 0.5);
    return ys;
}

}  // namespace

std::string_view to_string(DriftMethod method) {
    switch (method) {
        case DriftMethod::PeriodAverage: return "period-average";
        case DriftMethod::AsymptoticLimit: return "asymptotic-limit";
        case DriftMethod::CritperQuadrature: return "critper-quadrature";
    }
    return "unknown";
}

TrappingVerdict drift_velocity(const PhasePoint& p0, const Profiles& profiles,
                               const DriftOptions& opts) {
    return drift_velocity(p0, classify(p0, profiles, opts.classify), profiles, opts);
}

TrappingVerdict drift_velocity(const PhasePoint& p0, const Classification& c,
                               const Profiles& profiles, const DriftOptions& opts) {
    TrappingVerdict v{kNaN, false, DriftMethod::PeriodAverage, opts.trapped_tol};
    if (c.is<cls::Periodic>()) {
        const double t = c.as<cls::Periodic>().period;
        IntegrateOptions io = opts.integrate;
        io.sample_interval = t;
        io.backward = false;
        const Trajectory traj = integrate(p0, t, profiles, io);
        if (traj.termination != Termination::Horizon)
            fail(ErrorCode::SearchFailed, kModule,
                 "period integration ended early: " + std::string(to_string(traj.termination)));
        v.drift = (traj.back().state.x1() - p0.x1()) / t;
    } else if (c.is<cls::Asymptotic>()) {
        v.method = DriftMethod::AsymptoticLimit;
        v.drift = profiles.zonal.value(c.as<cls::Asymptotic>().x2_inf);
    } else {
        fail(ErrorCode::PathologicalClass, kModule,
             "drift undefined for class " + std::string(c.name()));
    }
    v.trapped = std::abs(v.drift) < opts.trapped_tol;
    return v;
}

double critper(const PotentialReport& report, const QuadOptions& quad) {
    if (!report.periodic())
        fail(ErrorCode::NotPeriodic, kModule, "critper needs a band bounded by simple zeros");
    return critper_on_band(report.tau, report.xi1, report.interval(), report.lower.dv,
                           report.upper.dv, report.profiles, quad);
}

TrappingVerdict drift_from_critper(const PotentialReport& report, double trapped_tol,
                                   const QuadOptions& quad) {
    const double cp = critper(report, quad);
    const GridSpec grid{report.lower.x, report.upper.x, 201};
    int s = 0;
    for (double y : grid.points()) {
        const double bp = report.profiles.coriolis.eval(y).d1;
        const int sy = (bp > 0.0) - (bp < 0.0);
        if (sy == 0 || (s != 0 && sy != s))
            fail(ErrorCode::InvalidArgument, kModule, "b' changes sign on the band");
        s = sy;
    }
    const double t = period(report, quad);
    const double drift = -2.0 * s * cp / std::abs(report.xi1) / t;
    return {drift, std::abs(drift) < trapped_tol, DriftMethod::CritperQuadrature, trapped_tol};
}

double rho_floor(const NegativeLobe& lobe, const Profiles& profiles) {
    const std::vector<double> ys = lobe_grid(lobe);
    std::size_t best = 0;
    double best_val = kInf;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double r = rho_or_inf(ys[i], profiles);
        if (r < best_val) {
            best_val = r;
            best = i;
        }
    }
    if (best_val == kInf)
        fail(ErrorCode::SearchFailed, kModule, "rho is nowhere finite on the lobe");
    const double lo = best > 0 ? ys[best - 1] : lobe.y1;
    const double hi = best + 1 < ys.size() ? ys[best + 1] : lobe.y2;
    const auto [x, val] = boost::math::tools::brent_find_minima(
        [&](double y) { return rho_or_inf(y, profiles); }, lo, hi, 52);
    (void)x;
    return std::max(0.0, std::min(val, best_val));
}

double h_of_xi1(double xi1, const NegativeLobe& lobe, const Profiles& profiles) {
    const double level = xi1 * xi1;
    const double n = rho_floor(lobe, profiles);
    if (level < n)
        fail(ErrorCode::BelowThreshold, kModule,
             "xi1^2 = " + std::to_string(level) + " is below N = " + std::to_string(n));
    const std::vector<double> ys = lobe_grid(lobe);
    auto inside = [&](double y) { return rho_or_inf(y, profiles) <= level; };
    for (std::size_t k = ys.size(); k-- > 0;) {
        if (!inside(ys[k]))
            continue;
        const double outside = k + 1 < ys.size() ? ys[k + 1] : lobe.y2;
        return bisect_boundary(inside, ys[k], outside);
    }
    fail(ErrorCode::SearchFailed, kModule, "no point of the lobe has rho <= xi1^2");
}

PhasePoint lambda_sing_point(double x1, double xi1, double x2, const NegativeLobe& lobe,
                             const Profiles& profiles) {
    require(xi1 != 0.0, kModule, "lambda_sing_point requires xi1 != 0");
    const double h = h_of_xi1(xi1, lobe, profiles);
    if (!(x2 > h && x2 < lobe.y2))
        fail(ErrorCode::OutOfWindow, kModule,
             "x2 = " + std::to_string(x2) + " outside (h, y2) = (" + std::to_string(h) + ", " +
                 std::to_string(lobe.y2) + ")");
    const double gap = rho(x2, profiles) - xi1 * xi1;
    if (gap < 0.0)
        fail(ErrorCode::OutOfWindow, kModule, "rho(x2) < xi1^2");
    return PhasePoint(x1, xi1, x2, std::sqrt(gap));
}

LambdaPerSetup make_lambda_per_setup(const Profiles& profiles, Interval xi1_range) {
    const auto beta = profiles.coriolis.betaplane_slope();
    require(beta && *beta == 1.0, kModule, "the periodic construction needs the beta = 1 plane");
    require(xi1_range.lo >= 1.0 && xi1_range.hi > xi1_range.lo, kModule,
            "xi1 range must lie in [1, inf)");
    const double u0 = profiles.zonal.value(0.0);
    require(u0 > 0.0 && u0 < 2.0 / 3.0, kModule, "needs 0 < u1(0) < 2/3");

    const GridSpec xi_grid{xi1_range.lo, xi1_range.hi, 64};
    for (double eta = 0.4; eta > 1e-3; eta *= 0.5) {
        const GridSpec ys{-eta, eta, 401};
        bool ok = true;
        for (double y : ys.points()) {
            const double upp = profiles.zonal.eval(y).d2;
            if (!(upp < -3.0)) {
                ok = false;
                break;
            }
            for (double xi : xi_grid.points()) {
                const double d = xi * xi + y * y;
                if ((2.0 * xi * xi - 6.0 * y * y) / (d * d * d) - upp < 0.5) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                break;
        }
        if (ok)
            return {eta, 1.0 - eta * eta / 8.0, u0, xi1_range};
    }
    fail(ErrorCode::SearchFailed, kModule, "no admissible eta down to 1e-3");
}

GValue lambda_per_G(double xi1, const LambdaPerSetup& setup, const Profiles& profiles,
                    const QuadOptions& quad) {
    require(xi1 > 0.0, kModule, "G is defined for xi1 > 0");
    const double tau = setup.tau(xi1);
    auto h = [&](double y) { return tau / xi1 - 1.0 / (xi1 * xi1 + y * y) - profiles.zonal.value(y); };
    const double eta = setup.eta;
    if (!(h(0.0) < 0.0 && h(-eta) > 0.0 && h(eta) > 0.0))
        fail(ErrorCode::NoTurningPoints, kModule,
             "H has no sign change on (-eta, 0) or (0, eta) at xi1 = " + std::to_string(xi1));
    auto below = [&](double y) { return h(y) < 0.0; };
    const double xmin = bisect_boundary(below, 0.0, -eta);
    const double xmax = bisect_boundary(below, 0.0, eta);
    const double dv_lo = potential_jet(tau, xi1, xmin, profiles).d1;
    const double dv_hi = potential_jet(tau, xi1, xmax, profiles).d1;
    const double g = critper_on_band(tau, xi1, {xmin, xmax}, dv_lo, dv_hi, profiles, quad);
    return {g, xmin, xmax, tau};
}

GRoot find_G_root(const LambdaPerSetup& setup, const Profiles& profiles, double width,
                  const QuadOptions& quad) {
    require(width > 0.0, kModule, "root width must be positive");
    double lo = setup.xi1_range.lo, hi = setup.xi1_range.hi;
    double g_lo = lambda_per_G(lo, setup, profiles, quad).g;
    const double g_hi = lambda_per_G(hi, setup, profiles, quad).g;
    if (!(g_lo * g_hi < 0.0))
        fail(ErrorCode::SearchFailed, kModule, "G does not change sign on the xi1 range");
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = lambda_per_G(mid, setup, profiles, quad).g;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    GRoot r;
    r.xi1 = 0.5 * (lo + hi);
    r.bracket = {lo, hi};
    constexpr double dh = 1e-4;
    r.slope = (lambda_per_G(r.xi1 + dh, setup, profiles, quad).g -
               lambda_per_G(r.xi1 - dh, setup, profiles, quad).g) /
              (2.0 * dh);
    r.at_root = lambda_per_G(r.xi1, setup, profiles, quad);
    return r;
}

std::vector<ScanRow> scan_lambda(const ScanGrid& grid, const Profiles& profiles,
                                 const ScanOptions& opts) {
    const std::vector<double> xs1 = grid.xi1.points();
    const std::vector<double> xs2 = grid.x2_0.points();
    const std::vector<double> zs2 = grid.xi2_0.points();
    std::vector<ScanRow> rows(grid.size());
    parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
        const std::size_t k = i % zs2.size();
        const std::size_t j = (i / zs2.size()) % xs2.size();
        const std::size_t m = i / (zs2.size() * xs2.size());
        ScanRow& row = rows[i];
        row = {xs1[m], xs2[j], zs2[k], kNaN, "", kNaN, kNaN, false, ""};
        try {
            const PhasePoint p(0.0, row.xi1, row.x2_0, row.xi2_0);
            row.tau = rossby_symbol(row.xi1, row.x2_0, row.xi2_0, profiles);
            const Classification c = classify(p, profiles, opts.drift.classify);
            row.cls = std::string(c.name());
            row.margin = c.margin.overall();
            if (c.is<cls::Periodic>() || c.is<cls::Asymptotic>()) {
                const TrappingVerdict v = drift_velocity(p, c, profiles, opts.drift);
                row.drift = v.drift;
                row.trapped = v.trapped;
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

}  // namespace wavetrap
