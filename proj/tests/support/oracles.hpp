#pragma once

// Reference formulas kept independent of the library: closed forms, a
// fixed-step integrator driven by finite differences of a separately coded
// symbol, midpoint quadrature in a cosine variable, and companion-matrix roots.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

namespace oracle {

inline double bump(double y, double center, double halfwidth, double amplitude) {
    const double s = (y - center) / halfwidth;
    if (std::abs(s) >= 1.0)
        return 0.0;
    return amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

struct Field {
    std::function<double(double)> u;  // zonal current
    std::function<double(double)> b;  // Coriolis parameter
};

inline double central(const std::function<double(double)>& f, double y, double h = 1e-3) {
    // five-point stencil
    return (-f(y + 2 * h) + 8 * f(y + h) - 8 * f(y - h) + f(y - 2 * h)) / (12 * h);
}

inline double symbol(const Field& f, double xi1, double x2, double xi2) {
    const double b = f.b(x2);
    return central(f.b, x2) * xi1 / (xi1 * xi1 + xi2 * xi2 + b * b) + f.u(x2) * xi1;
}

/// Hamilton's equations for (x1, x2, ξ2) from finite differences of the symbol.
inline std::array<double, 3> hamilton(const Field& f, double xi1, double x2, double xi2) {
    const double h = 1e-4;
    auto in_x1 = [&](double k) { return symbol(f, k, x2, xi2); };
    auto in_x2 = [&](double y) { return symbol(f, xi1, y, xi2); };
    auto in_xi2 = [&](double k) { return symbol(f, xi1, x2, k); };
    return {central(in_x1, xi1, h), central(in_xi2, xi2, h), -central(in_x2, x2, h)};
}

/// Classical RK4 on (x1, x2, ξ2); returns the state after `steps` steps.
inline std::array<double, 3> rk4(const Field& f, double xi1, std::array<double, 3> s, double t,
                                 int steps) {
    const double h = t / steps;
    auto rhs = [&](const std::array<double, 3>& z) { return hamilton(f, xi1, z[1], z[2]); };
    for (int n = 0; n < steps; ++n) {
        auto add = [&](const std::array<double, 3>& k, double c) {
            return std::array<double, 3>{s[0] + c * k[0], s[1] + c * k[1], s[2] + c * k[2]};
        };
        const auto k1 = rhs(s);
        const auto k2 = rhs(add(k1, h / 2));
        const auto k3 = rhs(add(k2, h / 2));
        const auto k4 = rhs(add(k3, h));
        for (int i = 0; i < 3; ++i)
            s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return s;
}

/// ∫_lo^hi g/√V for V with simple zeros at both ends, via y = m − w cos θ and
/// the composite midpoint rule in θ.
inline double band_integral(const std::function<double(double)>& g,
                            const std::function<double(double)>& v, double lo, double hi,
                            int n = 200000) {
    const double m = 0.5 * (lo + hi), w = 0.5 * (hi - lo);
    const double dt = std::numbers::pi / n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double th = (k + 0.5) * dt;
        const double y = m - w * std::cos(th);
        const double vy = v(y);
        if (vy > 0.0)
            sum += g(y) * w * std::sin(th) / std::sqrt(vy);
    }
    return sum * dt;
}

// Betaplane (β = 1, no current) rotation on circles x2² + ξ2² = r².
inline double betaplane_period(double xi1, double r) {
    const double s = xi1 * xi1 + r * r;
    return std::numbers::pi * s * s / std::abs(xi1);
}
inline double betaplane_drift(double xi1, double r) {
    const double s = xi1 * xi1 + r * r;
    return (r * r - xi1 * xi1) / (s * s);
}

/// Real parts of the roots of τ³ + pτ + q, sorted.
inline std::array<double, 3> cubic_roots(double p, double q) {
    Eigen::Matrix3d c;
    c << 0, 0, -q, 1, 0, -p, 0, 1, 0;
    const Eigen::Vector3cd ev = c.eigenvalues();
    std::array<double, 3> r{ev[0].real(), ev[1].real(), ev[2].real()};
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace oracle
