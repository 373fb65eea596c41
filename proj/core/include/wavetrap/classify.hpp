#pragma once

#include <string_view>
#include <variant>

#include "wavetrap/reduced_phase.hpp"
#include "wavetrap/rossby_dynamics.hpp"

namespace wavetrap {

namespace cls {
struct Periodic {
    double period;
    double xmin;
    double xmax;
};
struct FixedPoint {
    double x2;
};
struct Stopping {
    double x2_inf;
};
struct Asymptotic {
    double x2_inf;
    /// +1 when x2 increases towards x2_inf, −1 otherwise.
    int side;
};
struct Singular {
    double x2_inf;
};
}  // namespace cls

/// Which codimension-one condition a margin measures.
enum class SigmaCondition {
    None,
    CoriolisCritical,   // τ = ξ1 ū1 at a critical point of b
    FixedPointSystem,   // V = V' = 0 with ξ2 = 0
    ZonalExtremum,      // τ = ξ1 ū1 at a critical point of ū1
};

std::string_view to_string(SigmaCondition which);

struct SigmaMargin {
    double coriolis_critical;
    double fixed_point;
    double zonal_extremum;

    double overall() const;
    SigmaCondition closest() const;
};

/// Distance of p0's energy to the pathological set, as the minimum of three
/// residuals. Empty candidate sets contribute +∞.
SigmaMargin sigma_margin(const PhasePoint& p0, const Profiles& profiles);

namespace cls {
struct NearSigma {
    SigmaCondition which;
    double margin;
};
}  // namespace cls

struct ClassifyOptions {
    BracketOptions bracket;
    QuadOptions quad;
    double tol_sigma = 1e-6;
};

struct Classification {
    using Outcome = std::variant<cls::Periodic, cls::FixedPoint, cls::Stopping, cls::Asymptotic,
                                 cls::Singular, cls::NearSigma>;
    Outcome outcome;
    double tau;
    SigmaMargin margin;
    PotentialReport report;

    std::string_view name() const;
    /// Period for periodic motion, the limit latitude for motions with one,
    /// the rest latitude for fixed points, NaN for NearSigma.
    double t_or_x2inf() const;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(outcome);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(outcome);
    }
};

Classification classify(const PhasePoint& p0, const Profiles& profiles,
                        const ClassifyOptions& opts = {});

struct AsymptoticRates {
    double c1;
    double c2;
    /// Free log-log slope of |x2 − x2∞| against t over the tail.
    double exponent;
    double exponent_rms;
    double xi2_intercept;
    double xi2_r2;
    /// |C2²|C1| / |b'/ū1'| − 1| at x2∞.
    double consistency;
};

/// Fits x2 − x2∞ ≈ C1 t⁻² and ξ2 ≈ C2 t over the final decade of samples.
AsymptoticRates asymptotic_rates(const Trajectory& traj, double x2_inf, const Profiles& profiles);

}  // namespace wavetrap
