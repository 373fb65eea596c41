#include "wavetrap/classify.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "classify";
constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct LineFit {
    double slope;
    double intercept;
    double r2;
    double rms;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    f.rms = std::sqrt(ss_res / n);
    return f;
}

}  // namespace

std::string_view to_string(SigmaCondition which) {
    switch (which) {
        case SigmaCondition::None: return "none";
        case SigmaCondition::CoriolisCritical: return "coriolis-critical";
        case SigmaCondition::FixedPointSystem: return "fixed-point";
        case SigmaCondition::ZonalExtremum: return "zonal-extremum";
    }
    return "unknown";
}

double SigmaMargin::overall() const {
    return std::min({coriolis_critical, fixed_point, zonal_extremum});
}

SigmaCondition SigmaMargin::closest() const {
    const double m = overall();
    if (m == kInf)
        return SigmaCondition::None;
    if (m == coriolis_critical)
        return SigmaCondition::CoriolisCritical;
    if (m == fixed_point)
        return SigmaCondition::FixedPointSystem;
    return SigmaCondition::ZonalExtremum;
}

SigmaMargin sigma_margin(const PhasePoint& p0, const Profiles& profiles) {
    const double xi1 = p0.xi1();
    const double tau = rossby_symbol(xi1, p0.x2(), p0.xi2(), profiles);
    SigmaMargin m{kInf, kInf, kInf};

    for (double x : profiles.coriolis.critical_points())
        m.coriolis_critical =
            std::min(m.coriolis_critical, std::abs(tau - xi1 * profiles.zonal.value(x)));

    // ξ̇2 at ξ2 = 0; its zeros are the candidate rest latitudes.
    auto force = [&](double x) {
        const Jet b = profiles.coriolis.eval(x);
        const Jet u = profiles.zonal.eval(x);
        const double d = xi1 * xi1 + b.value * b.value;
        return -u.d1 * xi1 + 2.0 * b.value * b.d1 * b.d1 * xi1 / (d * d) - b.d2 * xi1 / d;
    };
    Interval window{p0.x2() - 5.0, p0.x2() + 5.0};
    const auto supp = profiles.zonal.support();
    if (supp)
        window = {std::min(window.lo, supp->lo), std::max(window.hi, supp->hi)};
    for (double x : zeros_in(force, window))
        m.fixed_point = std::min(m.fixed_point, std::abs(tau - rossby_symbol(xi1, x, 0.0, profiles)));

    if (supp) {
        auto du = [&](double y) { return profiles.zonal.eval(y).d1; };
        for (double y : zeros_in(du, *supp)) {
            if (y <= supp->lo || y >= supp->hi)
                continue;
            m.zonal_extremum =
                std::min(m.zonal_extremum, std::abs(tau - xi1 * profiles.zonal.value(y)));
        }
    }
    return m;
}

std::string_view Classification::name() const {
    struct Visitor {
        std::string_view operator()(const cls::Periodic&) const { return "periodic"; }
        std::string_view operator()(const cls::FixedPoint&) const { return "fixed-point"; }
        std::string_view operator()(const cls::Stopping&) const { return "stopping"; }
        std::string_view operator()(const cls::Asymptotic&) const { return "asymptotic"; }
        std::string_view operator()(const cls::Singular&) const { return "singular"; }
        std::string_view operator()(const cls::NearSigma&) const { return "near-sigma"; }
    };
    return std::visit(Visitor{}, outcome);
}

double Classification::t_or_x2inf() const {
    struct Visitor {
        double operator()(const cls::Periodic& c) const { return c.period; }
        double operator()(const cls::FixedPoint& c) const { return c.x2; }
        double operator()(const cls::Stopping& c) const { return c.x2_inf; }
        double operator()(const cls::Asymptotic& c) const { return c.x2_inf; }
        double operator()(const cls::Singular& c) const { return c.x2_inf; }
        double operator()(const cls::NearSigma&) const {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    return std::visit(Visitor{}, outcome);
}

Classification classify(const PhasePoint& p0, const Profiles& profiles,
                        const ClassifyOptions& opts) {
    const double xi1 = p0.xi1(), x0 = p0.x2(), xi2 = p0.xi2();
    const double tau = rossby_symbol(xi1, x0, xi2, profiles);
    PotentialReport report = bracket(tau, xi1, x0, profiles, opts.bracket);
    const SigmaMargin margin = sigma_margin(p0, profiles);
    Classification out{cls::FixedPoint{x0}, tau, margin, report};

    const double bp = profiles.coriolis.eval(x0).d1;
    if (report.degenerate() || std::abs(bp) <= opts.bracket.tol_deg)
        return out;

    // Direction of ẋ2 at p0; at a turning point, the direction into the band.
    int dir;
    if (x0 == report.lower.x)
        dir = +1;
    else if (x0 == report.upper.x)
        dir = -1;
    else if (xi2 != 0.0)
        dir = sign_of(-bp * xi1 * xi2);
    else
        dir = sign_of(-bp * xi1 * rossby_vector_field(p0, profiles).dxi2);
    if (dir == 0)
        return out;

    const Endpoint* ahead = dir > 0 ? &report.upper : &report.lower;
    const Endpoint* behind = dir > 0 ? &report.lower : &report.upper;
    const Endpoint* target = ahead;
    if (ahead->kind == EndpointKind::SimpleZero)
        target = behind;  // one bounce

    switch (target->kind) {
        case EndpointKind::SimpleZero:
            out.outcome = cls::Periodic{period(report, opts.quad), report.lower.x, report.upper.x};
            break;
        case EndpointKind::DegenerateZero:
            out.outcome = cls::Stopping{target->x};
            break;
        case EndpointKind::SimplePole:
            out.outcome = cls::Asymptotic{target->x, target == &report.upper ? +1 : -1};
            break;
        case EndpointKind::HigherPoleOrBPrimeZero:
            out.outcome = cls::Singular{target->x};
            break;
    }

    if ((out.is<cls::Periodic>() || out.is<cls::Asymptotic>()) &&
        margin.overall() < opts.tol_sigma)
        out.outcome = cls::NearSigma{margin.closest(), margin.overall()};
    return out;
}

AsymptoticRates asymptotic_rates(const Trajectory& traj, double x2_inf, const Profiles& profiles) {
    if (traj.samples.size() < 2)
        fail(ErrorCode::InsufficientTail, kModule, "trajectory has fewer than two samples");
    const double t_end = traj.back().t;
    const double t_start = t_end / 10.0;
    if (!(t_end > 0.0) || traj.front().t > t_start)
        fail(ErrorCode::InsufficientTail, kModule, "samples do not span a decade in t");

    std::vector<double> log_t, log_dx, t, xi2, scaled;
    int ref_sign = 0;
    double last_abs = kInf;
    for (const Sample& s : traj.samples) {
        if (s.t < t_start)
            continue;
        const double dx = s.state.x2() - x2_inf;
        const int sg = sign_of(dx);
        if (sg == 0 || (ref_sign != 0 && sg != ref_sign) || std::abs(dx) > last_abs)
            fail(ErrorCode::InsufficientTail, kModule,
                 "tail does not approach x2_inf monotonically");
        ref_sign = sg;
        last_abs = std::abs(dx);
        log_t.push_back(std::log(s.t));
        log_dx.push_back(std::log(std::abs(dx)));
        scaled.push_back(std::log(std::abs(dx)) + 2.0 * std::log(s.t));
        t.push_back(s.t);
        xi2.push_back(s.state.xi2());
    }
    if (t.size() < 10)
        fail(ErrorCode::InsufficientTail, kModule, "fewer than 10 samples in the final decade");

    const LineFit power = least_squares(log_t, log_dx);
    const LineFit lin = least_squares(t, xi2);
    double mean_scaled = 0;
    for (double v : scaled)
        mean_scaled += v;
    mean_scaled /= static_cast<double>(scaled.size());

    AsymptoticRates r;
    r.c1 = ref_sign * std::exp(mean_scaled);
    r.c2 = lin.slope;
    r.exponent = power.slope;
    r.exponent_rms = power.rms;
    r.xi2_intercept = lin.intercept;
    r.xi2_r2 = lin.r2;
    const double ratio = std::abs(profiles.coriolis.eval(x2_inf).d1 /
                                  profiles.zonal.eval(x2_inf).d1);
    r.consistency = std::abs(r.c2 * r.c2 * std::abs(r.c1) / ratio - 1.0);
    return r;
}

}  // namespace wavetrap
