#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavetrap/classify.hpp"

namespace wavetrap {

enum class DriftMethod { PeriodAverage, AsymptoticLimit, CritperQuadrature };

std::string_view to_string(DriftMethod method);

struct TrappingVerdict {
    double drift;
    bool trapped;
    DriftMethod method;
    double tolerance;
};

struct DriftOptions {
    ClassifyOptions classify;
    IntegrateOptions integrate;
    double trapped_tol = 1e-6;
};

/// Long-time mean of ẋ1: one integrated period for periodic motion, ū1(x2∞)
/// for asymptotic motion. Other classes raise PathologicalClass.
TrappingVerdict drift_velocity(const PhasePoint& p0, const Profiles& profiles,
                               const DriftOptions& opts = {});
/// Same, reusing a classification of p0.
TrappingVerdict drift_velocity(const PhasePoint& p0, const Classification& c,
                               const Profiles& profiles, const DriftOptions& opts = {});

/// ∫ [ξ1² − (τ/ξ1) b' / (2 (τ/ξ1 − ū1)²)] V^{−1/2} dy over a periodic band.
double critper(const PotentialReport& report, const QuadOptions& quad = {});

/// Drift implied by critper when b' keeps one sign on the band:
/// ∫₀ᵀ ẋ1 dt = −2 sign(b') critper / |ξ1|.
TrappingVerdict drift_from_critper(const PotentialReport& report, double trapped_tol = 1e-6,
                                   const QuadOptions& quad = {});

/// max(0, inf ρ) over the negative lobe (y1, y2).
double rho_floor(const NegativeLobe& lobe, const Profiles& profiles);

/// sup{y in (y1, y2) : ρ(y) ≤ ξ1²}. Raises BelowThreshold when ξ1² < N.
double h_of_xi1(double xi1, const NegativeLobe& lobe, const Profiles& profiles);

/// (x1⁰, ξ1, x2⁰, +√(ρ(x2⁰) − ξ1²)), a point of zero Rossby energy whose x2
/// climbs towards y2 when ξ1 < 0.
PhasePoint lambda_sing_point(double x1, double xi1, double x2, const NegativeLobe& lobe,
                             const Profiles& profiles);

/// Betaplane construction of periodic trapped rays near the maximum of a
/// bump current centred at 0.
struct LambdaPerSetup {
    double eta;
    double delta;
    double u0;
    Interval xi1_range{1.0, 50.0};

    double tau(double xi1) const { return u0 * xi1 + delta / xi1; }
};

/// Picks the largest η in {0.4, 0.2, 0.1, ...} for which ū1'' < −3 and
/// H'' ≥ 1/2 on (−η, η). Requires the β = 1 betaplane and 0 < ū1(0) < 2/3.
LambdaPerSetup make_lambda_per_setup(const Profiles& profiles, Interval xi1_range = {1.0, 50.0});

struct GValue {
    double g;
    double xmin;
    double xmax;
    double tau;
};

/// G(ξ1), the critper integral on the band cut out by H_{ξ1} around 0.
GValue lambda_per_G(double xi1, const LambdaPerSetup& setup, const Profiles& profiles,
                    const QuadOptions& quad = {});

struct GRoot {
    double xi1;
    Interval bracket;
    double slope;
    GValue at_root;
};

/// Sign-change root of G on setup.xi1_range, bisected to `width`.
GRoot find_G_root(const LambdaPerSetup& setup, const Profiles& profiles, double width = 1e-6,
                  const QuadOptions& quad = {});

struct ScanGrid {
    GridSpec xi1;
    GridSpec x2_0;
    GridSpec xi2_0;

    std::size_t size() const { return xi1.count * x2_0.count * xi2_0.count; }
};

struct ScanRow {
    double xi1;
    double x2_0;
    double xi2_0;
    double tau;
    std::string cls;
    double margin;
    double drift;
    bool trapped;
    std::string error;
};

struct ScanOptions {
    DriftOptions drift;
    unsigned threads = 1;
};

/// One row per grid point, ordered ξ1-major then x2⁰ then ξ2⁰. Per-point
/// failures are recorded in the row.
std::vector<ScanRow> scan_lambda(const ScanGrid& grid, const Profiles& profiles,
                                 const ScanOptions& opts = {});

}  // namespace wavetrap
