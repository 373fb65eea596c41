#include "wavetrap/profiles.hpp"

#include <cmath>
#include <sstream>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "profiles";

// Unit bump exp(1 − 1/(1 − s²)) and its s-derivatives.
Jet unit_bump(double s) {
    const double q = 1.0 - s * s;
    if (q <= 0.0)
        return {};
    const double f = std::exp(1.0 - 1.0 / q);
    if (f == 0.0)
        return {};
    const double g1 = -2.0 * s / (q * q);
    const double g2 = -(2.0 + 6.0 * s * s) / (q * q * q);
    return {f, f * g1, f * (g2 + g1 * g1)};
}

Jet eval_kind(const zonal::Zero&, double) { return {}; }

Jet eval_kind(const zonal::Bump& b, double y) {
    const Jet u = unit_bump((y - b.center) / b.halfwidth);
    const double w = b.halfwidth;
    return {b.amplitude * u.value, b.amplitude * u.d1 / w, b.amplitude * u.d2 / (w * w)};
}

Jet eval_kind(const zonal::SignedBump& b, double y) {
    const Jet u = eval_kind(zonal::Bump{0.0, b.halfwidth, 1.0}, y);
    return {b.scale * y * u.value, b.scale * (u.value + y * u.d1),
            b.scale * (2.0 * u.d1 + y * u.d2)};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ZonalProfile::ZonalProfile(Kind kind) : kind_(std::move(kind)) {}

Jet ZonalProfile::eval(double y) const {
    return std::visit([y](const auto& k) { return eval_kind(k, y); }, kind_);
}

std::optional<Interval> ZonalProfile::support() const {
    struct Visitor {
        std::optional<Interval> operator()(const zonal::Zero&) const { return std::nullopt; }
        std::optional<Interval> operator()(const zonal::Bump& b) const {
            return Interval{b.center - b.halfwidth, b.center + b.halfwidth};
        }
        std::optional<Interval> operator()(const zonal::SignedBump& b) const {
            return Interval{-b.halfwidth, b.halfwidth};
        }
    };
    return std::visit(Visitor{}, kind_);
}

std::string ZonalProfile::description() const {
    struct Visitor {
        std::string operator()(const zonal::Zero&) const { return "zero"; }
        std::string operator()(const zonal::Bump& b) const {
            return "bump(center=" + fmt(b.center) + ", halfwidth=" + fmt(b.halfwidth) +
                   ", amplitude=" + fmt(b.amplitude) + ")";
        }
        std::string operator()(const zonal::SignedBump& b) const {
            return "signed(scale=" + fmt(b.scale) + ", halfwidth=" + fmt(b.halfwidth) + ")";
        }
    };
    return std::visit(Visitor{}, kind_);
}

ZonalProfile make_zero_zonal() { return ZonalProfile{zonal::Zero{}}; }

ZonalProfile make_bump(double center, double halfwidth, double amplitude) {
    require(halfwidth > 0.0 && std::isfinite(halfwidth), kModule,
            "bump halfwidth must be positive, got " + fmt(halfwidth));
    require(std::isfinite(center) && std::isfinite(amplitude), kModule,
            "bump center and amplitude must be finite");
    return ZonalProfile{zonal::Bump{center, halfwidth, amplitude}};
}

ZonalProfile make_signed_zonal(double scale, double halfwidth) {
    require(scale != 0.0 && std::isfinite(scale), kModule, "signed zonal scale must be nonzero");
    require(halfwidth > 0.0 && std::isfinite(halfwidth), kModule,
            "signed zonal halfwidth must be positive, got " + fmt(halfwidth));
    return ZonalProfile{zonal::SignedBump{scale, halfwidth}};
}

// ---------------------------------------------------------------------------

Jet CoriolisProfile::eval(double y) const {
    // Horner for the value and both derivatives at once.
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        d2 = d2 * y + 2.0 * d1;
        d1 = d1 * y + v;
        v = v * y + *it;
    }
    return {v, d1, d2};
}

std::string CoriolisProfile::description() const {
    if (slope_)
        return "betaplane(beta=" + fmt(*slope_) + ")";
    std::string out = "polynomial(";
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        out += (k ? ", " : "") + fmt(coeffs_[k]);
    return out + ")";
}

double CoriolisProfile::scale() const {
    double s = 1.0;
    for (double c : critical_points_)
        s = std::max(s, std::abs(c));
    return s;
}

CoriolisProfile make_betaplane(double beta) {
    require(beta != 0.0 && std::isfinite(beta), kModule, "betaplane slope must be nonzero");
    CoriolisProfile p;
    p.coeffs_ = {0.0, beta};
    p.slope_ = beta;
    return p;
}

CoriolisProfile make_polynomial_coriolis(std::vector<double> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0.0)
        coeffs.pop_back();
    require(coeffs.size() >= 2, kModule, "coriolis polynomial must have degree >= 1");
    for (double c : coeffs)
        require(std::isfinite(c), kModule, "coriolis coefficients must be finite");

    CoriolisProfile p;
    p.coeffs_ = std::move(coeffs);
    if (p.coeffs_.size() == 2 && p.coeffs_[0] == 0.0) {
        p.slope_ = p.coeffs_[1];
        return p;
    }
    if (p.coeffs_.size() > 2) {
        // Cauchy bound on the roots of b'.
        const std::size_t n = p.coeffs_.size() - 1;
        const double lead = static_cast<double>(n) * p.coeffs_[n];
        double bound = 0.0;
        for (std::size_t k = 1; k < n; ++k)
            bound = std::max(bound, std::abs(static_cast<double>(k) * p.coeffs_[k] / lead));
        bound += 1.0;
        p.critical_points_ = zeros_in([&p](double y) { return p.eval(y).d1; },
                                      Interval{-bound, bound});
    }
    return p;
}

SymbolConditionReport check_symbol_condition(const CoriolisProfile& profile, int orders,
                                             const GridSpec& grid) {
    require(orders >= 0 && orders <= 2, kModule, "symbol condition supports orders 0..2");
    SymbolConditionReport report;
    report.max_ratio.assign(static_cast<std::size_t>(orders) + 1, 0.0);
    for (double y : grid.points()) {
        const Jet b = profile.eval(y);
        const double denom = 1.0 + b.value * b.value;
        const std::array<double, 3> derivs{b.value, b.d1, b.d2};
        for (int a = 0; a <= orders; ++a)
            report.max_ratio[a] = std::max(report.max_ratio[a], std::abs(derivs[a]) / denom);
    }
    return report;
}

bool coriolis_grows_at_infinity(const CoriolisProfile& profile) {
    const double x = 100.0 * profile.scale();
    const double b0 = profile.value(0.0);
    const double floor = b0 * b0 + 1.0;
    const double bp = profile.value(x), bm = profile.value(-x);
    return bp * bp > floor && bm * bm > floor;
}

std::optional<NegativeLobe> find_negative_lobe(const ZonalProfile& zonal) {
    const auto supp = zonal.support();
    if (!supp)
        return std::nullopt;
    auto u = [&zonal](double y) { return zonal.value(y); };
    std::vector<double> zeros = zeros_in(u, *supp);

    double left = supp->lo;
    for (double z : zeros) {
        const double probe = 0.5 * (left + z);
        if (zonal.value(probe) < 0.0 && zonal.eval(z).d1 > 0.0)
            return NegativeLobe{left, z};
        left = z;
    }
    return std::nullopt;
}

}  // namespace wavetrap
