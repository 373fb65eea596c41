#include "wavetrap/reduced_phase.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <optional>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "reduced_phase";

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double denominator(double tau, double xi1, double x2, const Profiles& profiles) {
    return tau - profiles.zonal.value(x2) * xi1;
}

void check_denominator(double a, double tau, double x2) {
    if (std::abs(a) < 1e-14 * std::max(1.0, std::abs(tau)))
        fail(ErrorCode::SingularDenominator, kModule,
             "tau - u1*xi1 vanishes at x2 = " + std::to_string(x2));
}

// V without the singularity guard; only called where a ≠ 0.
double raw_potential(double tau, double xi1, double x2, const Profiles& profiles) {
    const Jet b = profiles.coriolis.eval(x2);
    const double a = denominator(tau, xi1, x2, profiles);
    return b.d1 * xi1 / a - xi1 * xi1 - b.value * b.value;
}

class Marcher {
public:
    Marcher(double tau, double xi1, double x0, const Profiles& profiles,
            const BracketOptions& opts)
        : tau_(tau), xi1_(xi1), x0_(x0), profiles_(profiles), opts_(opts) {
        const auto supp = profiles.zonal.support();
        far_ = 2.0 * profiles.coriolis.scale();
        if (supp)
            far_ = std::max({far_, std::abs(supp->lo), std::abs(supp->hi)});
    }

    Endpoint march(int dir, double h0) const {
        double x = x0_;
        double a_prev = a(x);
        double h = h0;
        while (std::abs(x - x0_) <= opts_.max_distance) {
            const double xn = x + dir * h;
            const double an = a(xn);
            if (an == 0.0 || sign_of(an) != sign_of(a_prev)) {
                const int ref = sign_of(a_prev);
                const double xp = bisect_boundary(
                    [&](double y) { return sign_of(a(y)) == ref; }, x, xn);
                if (raw_potential(tau_, xi1_, xp, profiles_) > 0.0)
                    return pole(xp);
                return zero(x, xp, ref);
            }
            if (raw_potential(tau_, xi1_, xn, profiles_) <= 0.0)
                return zero(x, xn, sign_of(an));
            x = xn;
            a_prev = an;
            if (std::abs(x) > far_)
                h *= 1.25;
        }
        fail(ErrorCode::SearchFailed, kModule,
             "no bracket endpoint within max_distance of x2 = " + std::to_string(x0_));
    }

    Endpoint zero_at(double x) const {
        const PotentialJet j = potential_jet(tau_, xi1_, x, profiles_);
        const auto kind = std::abs(j.d1) > opts_.tol_deg ? EndpointKind::SimpleZero
                                                         : EndpointKind::DegenerateZero;
        return {x, kind, j.value, j.d1};
    }

private:
    double a(double y) const { return denominator(tau_, xi1_, y, profiles_); }

    Endpoint zero(double inside, double outside, int a_sign) const {
        const double x = bisect_boundary(
            [&](double y) {
                return sign_of(a(y)) == a_sign && raw_potential(tau_, xi1_, y, profiles_) > 0.0;
            },
            inside, outside);
        return zero_at(x);
    }

    Endpoint pole(double x) const {
        const Jet u = profiles_.zonal.eval(x);
        const Jet b = profiles_.coriolis.eval(x);
        const bool higher = std::abs(u.d1) <= opts_.tol_deg || std::abs(b.d1) <= opts_.tol_deg;
        const double v = raw_potential(tau_, xi1_, x, profiles_);
        return {x, higher ? EndpointKind::HigherPoleOrBPrimeZero : EndpointKind::SimplePole, v,
                std::numeric_limits<double>::quiet_NaN()};
    }

    double tau_, xi1_, x0_;
    const Profiles& profiles_;
    const BracketOptions& opts_;
    double far_;
};

bool same_endpoint(const Endpoint& p, const Endpoint& q) {
    return p.kind == q.kind && std::abs(p.x - q.x) <= 1e-9 * std::max(1.0, std::abs(p.x));
}

}  // namespace

double potential(double tau, double xi1, double x2, const Profiles& profiles) {
    check_denominator(denominator(tau, xi1, x2, profiles), tau, x2);
    return raw_potential(tau, xi1, x2, profiles);
}

PotentialJet potential_jet(double tau, double xi1, double x2, const Profiles& profiles) {
    const Jet b = profiles.coriolis.eval(x2);
    const Jet u = profiles.zonal.eval(x2);
    const double a = tau - u.value * xi1;
    check_denominator(a, tau, x2);
    const double v = b.d1 * xi1 / a - xi1 * xi1 - b.value * b.value;
    const double dv =
        xi1 * (b.d2 * a + b.d1 * u.d1 * xi1) / (a * a) - 2.0 * b.value * b.d1;
    return {v, dv};
}

std::vector<SurfacePoint> energy_surface_points(double tau, double xi1, const GridSpec& grid,
                                                const Profiles& profiles) {
    require(xi1 != 0.0, kModule, "energy surface requires xi1 != 0");
    std::vector<SurfacePoint> out;
    for (double x : grid.points()) {
        const double a = denominator(tau, xi1, x, profiles);
        if (std::abs(a) < 1e-14 * std::max(1.0, std::abs(tau)))
            continue;
        const double v = raw_potential(tau, xi1, x, profiles);
        if (!(v >= 0.0))
            continue;
        const double r = std::sqrt(v);
        out.push_back({x, r, -r, v});
    }
    return out;
}

std::string_view to_string(EndpointKind kind) {
    switch (kind) {
        case EndpointKind::SimpleZero: return "simple-zero";
        case EndpointKind::DegenerateZero: return "degenerate-zero";
        case EndpointKind::SimplePole: return "simple-pole";
        case EndpointKind::HigherPoleOrBPrimeZero: return "higher-pole";
    }
    return "unknown";
}

PotentialReport bracket(double tau, double xi1, double x2_0, const Profiles& profiles,
                        const BracketOptions& opts) {
    require(xi1 != 0.0, kModule, "bracket requires xi1 != 0");
    require(opts.step > 0.0 && opts.tol_deg > 0.0, kModule, "bracket options must be positive");

    const PotentialJet start = potential_jet(tau, xi1, x2_0, profiles);
    const double b0 = profiles.coriolis.value(x2_0);
    const double vtol = opts.forbidden_tol * std::max(1.0, xi1 * xi1 + b0 * b0);
    if (start.value < -vtol)
        fail(ErrorCode::ForbiddenRegion, kModule,
             "V(x2_0) = " + std::to_string(start.value) + " < 0");

    PotentialReport report{tau, xi1, x2_0, {}, {}, profiles};
    const Marcher marcher(tau, xi1, x2_0, profiles, opts);

    const bool on_zero = start.value <= vtol;
    if (on_zero && std::abs(start.d1) <= opts.tol_deg) {
        const Endpoint e{x2_0, EndpointKind::DegenerateZero, start.value, start.d1};
        report.lower = report.upper = e;
        return report;
    }

    const double h0 = opts.step * profiles.coriolis.scale();
    auto settle = [&](int dir) -> Endpoint {
        if (on_zero && dir * start.d1 < 0.0)
            return marcher.zero_at(x2_0);
        Endpoint prev = marcher.march(dir, h0);
        double h = h0;
        for (int r = 0; r < opts.max_refinements; ++r) {
            h *= 0.5;
            Endpoint cur = marcher.march(dir, h);
            if (same_endpoint(prev, cur))
                return cur;
            prev = cur;
        }
        return prev;
    };
    report.lower = settle(-1);
    report.upper = settle(+1);
    return report;
}

namespace detail {

double integrate_over_band(const std::function<double(double)>& g,
                           const std::function<double(double)>& v, Interval band, double dv_lo,
                           double dv_hi, const QuadOptions& quad) {
    const double w = 0.5 * band.width();
    if (w <= 0.0)
        return 0.0;
    auto theta_integrand = [&](double theta) {
        // distance to the nearer end, without cancellation
        const double s = std::sin(0.25 * std::numbers::pi - 0.5 * std::abs(theta));
        const double d = 2.0 * w * s * s;
        const bool upper = theta > 0.0;
        const double y = upper ? band.hi - d : band.lo + d;
        double vy = v(y);
        if (!(vy > 0.0) || d < 1e-10 * w)
            vy = std::abs(upper ? dv_hi : dv_lo) * d;
        if (!(vy > 0.0))
            return 0.0;
        return g(y) * w * std::cos(theta) / std::sqrt(vy);
    };
    return integrate_regular(theta_integrand,
                             Interval{-0.5 * std::numbers::pi, 0.5 * std::numbers::pi}, quad);
}

}  // namespace detail

double period(const PotentialReport& report, const QuadOptions& quad) {
    if (!report.periodic())
        fail(ErrorCode::NotPeriodic, kModule,
             std::string("bracket endpoints are ") + std::string(to_string(report.lower.kind)) +
                 " and " + std::string(to_string(report.upper.kind)));
    const Profiles& pr = report.profiles;
    const double tau = report.tau, xi1 = report.xi1;
    auto g = [&](double y) {
        const double a = denominator(tau, xi1, y, pr);
        return std::abs(pr.coriolis.eval(y).d1 * xi1) / (a * a);
    };
    auto v = [&](double y) { return raw_potential(tau, xi1, y, pr); };
    return detail::integrate_over_band(g, v, report.interval(), report.lower.dv, report.upper.dv,
                                       quad);
}

double rho(double x2, const Profiles& profiles) {
    const double u = profiles.zonal.value(x2);
    if (u == 0.0)
        fail(ErrorCode::SingularDenominator, kModule,
             "rho undefined where u1 = 0 (x2 = " + std::to_string(x2) + ")");
    const Jet b = profiles.coriolis.eval(x2);
    return -b.d1 / u - b.value * b.value;
}

}  // namespace wavetrap
