#pragma once

#include <string_view>
#include <vector>

#include "wavetrap/numerics.hpp"
#include "wavetrap/profiles.hpp"

namespace wavetrap {

/// V_{τ,ξ1}(x2) = b'ξ1/(τ − ū1ξ1) − ξ1² − b². Throws SingularDenominator when
/// |τ − ū1ξ1| < 1e-14·max(1, |τ|).
double potential(double tau, double xi1, double x2, const Profiles& profiles);

struct PotentialJet {
    double value;
    double d1;
};

/// V and V' together; same singular-denominator rule as potential().
PotentialJet potential_jet(double tau, double xi1, double x2, const Profiles& profiles);

struct SurfacePoint {
    double x2;
    double xi2_plus;
    double xi2_minus;
    double v;
};

/// Grid points where V ≥ 0, with both branches ±√V. Forbidden and singular
/// latitudes are skipped.
std::vector<SurfacePoint> energy_surface_points(double tau, double xi1, const GridSpec& grid,
                                                const Profiles& profiles);

enum class EndpointKind { SimpleZero, DegenerateZero, SimplePole, HigherPoleOrBPrimeZero };

std::string_view to_string(EndpointKind kind);

struct Endpoint {
    double x;
    EndpointKind kind;
    /// V and V' at x; for poles these are taken at the last regular point.
    double v;
    double dv;
};

/// The allowed band of V_{τ,ξ1} containing x2⁰.
struct PotentialReport {
    double tau;
    double xi1;
    double x2_0;
    Endpoint lower;
    Endpoint upper;
    Profiles profiles;

    bool degenerate() const { return lower.x == upper.x; }
    bool periodic() const {
        return !degenerate() && lower.kind == EndpointKind::SimpleZero &&
               upper.kind == EndpointKind::SimpleZero;
    }
    Interval interval() const { return {lower.x, upper.x}; }
    double v(double x2) const { return potential(tau, xi1, x2, profiles); }
    double dv(double x2) const { return potential_jet(tau, xi1, x2, profiles).d1; }
};

struct BracketOptions {
    /// Initial march step, multiplied by the Coriolis length scale.
    double step = 1e-3;
    double max_distance = 1e8;
    double tol_deg = 1e-8;
    /// Step halvings allowed while waiting for the bracket to settle.
    int max_refinements = 6;
    /// Start is accepted when V(x2⁰) ≥ −forbidden_tol·max(1, ξ1² + b²(x2⁰)).
    double forbidden_tol = 1e-12;
};

PotentialReport bracket(double tau, double xi1, double x2_0, const Profiles& profiles,
                        const BracketOptions& opts = {});

/// Period ∫ |b'ξ1| / ((τ − ξ1ū1)² √V) dx2 over the bracket.
double period(const PotentialReport& report, const QuadOptions& quad = {});

/// ρ = −b'/ū1 − b². Throws SingularDenominator where ū1 = 0.
double rho(double x2, const Profiles& profiles);

namespace detail {
/// ∫ g(y)/√V(y) dy over a band whose ends are simple zeros of V. Near the ends,
/// where rounding can push V below zero, V is replaced by its linearization.
double integrate_over_band(const std::function<double(double)>& g,
                           const std::function<double(double)>& v, Interval band, double dv_lo,
                           double dv_hi, const QuadOptions& quad);
}  // namespace detail

}  // namespace wavetrap
