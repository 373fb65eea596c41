#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wavetrap/numerics.hpp"

namespace wavetrap {

/// Value of a background field together with its first two derivatives.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

namespace zonal {
struct Zero {};
/// amplitude · exp(1 − 1/(1 − s²)), s = (y − center)/halfwidth, zero for |s| ≥ 1.
struct Bump {
    double center;
    double halfwidth;
    double amplitude;
};
/// scale · y · bump(y; 0, halfwidth, 1).
struct SignedBump {
    double scale;
    double halfwidth;
};
}  // namespace zonal

/// Zonal current ū1(x2). Immutable; evaluation is pure.
class ZonalProfile {
public:
    using Kind = std::variant<zonal::Zero, zonal::Bump, zonal::SignedBump>;

    ZonalProfile() = default;
    explicit ZonalProfile(Kind kind);

    Jet eval(double y) const;
    double value(double y) const { return eval(y).value; }

    /// Closed support interval; empty for the zero profile.
    std::optional<Interval> support() const;
    bool is_zero() const { return std::holds_alternative<zonal::Zero>(kind_); }
    const Kind& kind() const { return kind_; }
    std::string description() const;

private:
    Kind kind_{zonal::Zero{}};
};

/// Coriolis parameter b(x2) as a polynomial Σ c_k x2^k. The betaplane is the
/// linear case and records its slope.
class CoriolisProfile {
public:
    CoriolisProfile() = default;

    Jet eval(double y) const;
    double value(double y) const { return eval(y).value; }

    std::optional<double> betaplane_slope() const { return slope_; }
    std::span<const double> critical_points() const { return critical_points_; }
    std::span<const double> coefficients() const { return coeffs_; }
    std::string description() const;

    /// Characteristic length: unit for the betaplane, the largest critical point
    /// magnitude (at least 1) otherwise.
    double scale() const;

    friend CoriolisProfile make_betaplane(double beta);
    friend CoriolisProfile make_polynomial_coriolis(std::vector<double> coeffs);

private:
    std::vector<double> coeffs_;
    std::optional<double> slope_;
    std::vector<double> critical_points_;
};

/// The pair of background fields every dynamical routine needs.
struct Profiles {
    ZonalProfile zonal;
    CoriolisProfile coriolis;
};

ZonalProfile make_zero_zonal();
ZonalProfile make_bump(double center, double halfwidth, double amplitude);
ZonalProfile make_signed_zonal(double scale, double halfwidth);

CoriolisProfile make_betaplane(double beta);
/// b(y) = Σ coeffs[k]·y^k; critical points located by a sign-change scan of b'.
CoriolisProfile make_polynomial_coriolis(std::vector<double> coeffs);

/// sup over the grid of |b^(α)|/(1 + b²) for α = 0..orders (orders ≤ 2).
struct SymbolConditionReport {
    std::vector<double> max_ratio;
};

SymbolConditionReport check_symbol_condition(const CoriolisProfile& profile, int orders,
                                             const GridSpec& grid);

/// Numerical surrogate for b² → ∞: b²(±100·scale) > b²(0) + 1.
bool coriolis_grows_at_infinity(const CoriolisProfile& profile);

/// Consecutive zeros y1 < y2 of ū1 with ū1 < 0 on (y1, y2) and ū1'(y2) > 0. A
/// support edge may serve as y1.
struct NegativeLobe {
    double y1;
    double y2;
};

std::optional<NegativeLobe> find_negative_lobe(const ZonalProfile& zonal);

}  // namespace wavetrap
