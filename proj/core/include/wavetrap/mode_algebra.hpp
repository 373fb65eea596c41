#pragma once

#include <array>

#include <Eigen/Dense>

#include "wavetrap/profiles.hpp"

namespace wavetrap {

/// Principal symbol of the shallow-water propagator at (x2, ξ1, ξ2).
Eigen::Matrix3cd a0(double x2, double xi1, double xi2, const CoriolisProfile& coriolis);

/// ±√(ξ1² + ξ2² + b²(x2)); `sign` must be +1 or −1.
double poincare_symbol(int sign, double x2, double xi1, double xi2,
                       const CoriolisProfile& coriolis);

struct ModeMatrices {
    Eigen::Matrix3cd a0;
    /// Columns: Poincaré −, Rossby, Poincaré +.
    Eigen::Matrix3cd p0;
    Eigen::Matrix3cd q0;
    double x2;
    double xi1;
    double xi2;
    double b;
};

/// Closed-form polarization matrix P0 and its inverse Q0. Requires ξ1 ≠ 0.
ModeMatrices polarization_matrices(double x2, double xi1, double xi2,
                                   const CoriolisProfile& coriolis);

/// 2(ξ² + b²)^{3/2} / ((ξ1² + b²)|ξ1|), the modulus of det P0.
double polarization_det_modulus(double xi1, double xi2, double b);

/// ‖A0 c_j − iτ_j c_j‖ for the columns c_j of P0 and τ_j ∈ {τ−, 0, τ+}.
std::array<double, 3> polarization_residuals(const ModeMatrices& m);

}  // namespace wavetrap
