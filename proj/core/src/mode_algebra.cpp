#include "wavetrap/mode_algebra.hpp"

#include <cmath>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "mode_algebra";
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

}  // namespace

Eigen::Matrix3cd a0(double x2, double xi1, double xi2, const CoriolisProfile& coriolis) {
    const double b = coriolis.value(x2);
    Eigen::Matrix3cd m;
    m << 0.0, I * xi1, I * xi2,
         I * xi1, 0.0, -b,
         I * xi2, b, 0.0;
    return m;
}

double poincare_symbol(int sign, double x2, double xi1, double xi2,
                       const CoriolisProfile& coriolis) {
    require(sign == 1 || sign == -1, kModule, "sign must be +1 or -1");
    const double b = coriolis.value(x2);
    return sign * std::sqrt(xi1 * xi1 + xi2 * xi2 + b * b);
}

ModeMatrices polarization_matrices(double x2, double xi1, double xi2,
                                   const CoriolisProfile& coriolis) {
    require(xi1 != 0.0, kModule, "polarization matrices need xi1 != 0");
    const double b = coriolis.value(x2);
    const double s = std::sqrt(xi1 * xi1 + xi2 * xi2 + b * b);
    const double d = xi1 * xi1 + b * b;

    ModeMatrices m;
    m.x2 = x2;
    m.xi1 = xi1;
    m.xi2 = xi2;
    m.b = b;
    m.a0 = a0(x2, xi1, xi2, coriolis);
    m.p0 << (-xi1 * s - I * xi2 * b) / d, -I * b / xi1, (xi1 * s - I * xi2 * b) / d,
            1.0, -xi2 / xi1, 1.0,
            (xi1 * xi2 + I * b * s) / d, 1.0, (xi1 * xi2 - I * b * s) / d;
    Eigen::Matrix3cd q;
    q << I * b * xi2 - xi1 * s, d, -I * b * s + xi1 * xi2,
         2.0 * I * b * xi1, -2.0 * xi1 * xi2, 2.0 * xi1 * xi1,
         I * b * xi2 + xi1 * s, d, I * b * s + xi1 * xi2;
    m.q0 = q / (2.0 * s * s);
    return m;
}

double polarization_det_modulus(double xi1, double xi2, double b) {
    const double s2 = xi1 * xi1 + xi2 * xi2 + b * b;
    return 2.0 * std::pow(s2, 1.5) / ((xi1 * xi1 + b * b) * std::abs(xi1));
}

std::array<double, 3> polarization_residuals(const ModeMatrices& m) {
    const double s = std::sqrt(m.xi1 * m.xi1 + m.xi2 * m.xi2 + m.b * m.b);
    const std::array<double, 3> taus{-s, 0.0, s};
    std::array<double, 3> out;
    for (int j = 0; j < 3; ++j) {
        const Eigen::Vector3cd c = m.p0.col(j);
        out[j] = (m.a0 * c - I * taus[j] * c).norm();
    }
    return out;
}

}  // namespace wavetrap
