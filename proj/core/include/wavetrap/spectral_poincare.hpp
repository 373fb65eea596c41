#pragma once

#include "wavetrap/numerics.hpp"
#include "wavetrap/profiles.hpp"

namespace wavetrap {

/// The classical oscillator ξ2² + b²(x2) for a fixed Coriolis profile.
class ActionProfile {
public:
    explicit ActionProfile(CoriolisProfile coriolis, QuadOptions quad = {1e-12, 15});

    double well_bottom() const { return min_b2_; }
    double well_center() const { return argmin_; }
    /// True when b² has a single local minimum on the search window.
    bool single_well() const { return single_well_; }

    /// Turning points b²(x) = h around the well.
    Interval turning_points(double h) const;
    /// I(h) = ∮ ξ2 dx2 = 2∫ √(h − b²) dx2. BelowWell for h ≤ min b²; MultiWell
    /// when more than two turning points exist at level h.
    double action(double h) const;
    /// dI/dh = ∫ dx2 / √(h − b²).
    double action_slope(double h) const;
    /// Inverse of I on (min b², ∞).
    double energy_for_action(double target) const;

    const CoriolisProfile& coriolis() const { return coriolis_; }

private:
    CoriolisProfile coriolis_;
    QuadOptions quad_;
    double argmin_ = 0.0;
    double min_b2_ = 0.0;
    bool single_well_ = true;
};

double action_integral(double h, const CoriolisProfile& coriolis);

/// Leading-order eigenvalue: I(λ) = 2πε(n + 1/2).
double bohr_sommerfeld(double eps, int n, const ActionProfile& action);
double bohr_sommerfeld(double eps, int n, const CoriolisProfile& coriolis);

/// Number of n ≥ 0 with λ_n < energy.
int eigenvalue_count(double energy, double eps, const ActionProfile& action);

struct DispersionTriple {
    double tau_minus;
    double tau_r;
    double tau_plus;
    double xi1;
    int n;
    double eps;
    double beta;
};

/// Real roots of τ³ − (ξ1² + βε(2n+1))τ + εβξ1 = 0 in increasing order.
DispersionTriple dispersion_roots(double xi1, int n, double eps, double beta);

/// |τ_R − εβξ1/(ξ1² + βε(2n+1))| / |τ_R|.
double rossby_root_asymptotics(double xi1, int n, double eps, double beta);

/// |2ξ1 + ∂λ/∂ξ1| / (2√(λ + ξ1²)).
double group_speed(double xi1, double lambda, double dlambda_dxi1);

}  // namespace wavetrap
