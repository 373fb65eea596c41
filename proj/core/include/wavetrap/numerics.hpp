#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace wavetrap {

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Uniform sample specification: `count` points spanning [lo, hi] inclusive.
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 1001;

    std::vector<double> points() const;
};

struct QuadOptions {
    double rel_tol = 1e-9;
    unsigned max_depth = 15;
};

struct RootScanOptions {
    std::size_t cells = 10000;
    double tol = 1e-12;
};

/// Shrinks [inside, outside] towards the boundary of the set where `is_inside`
/// holds. Stops when the bracket is narrower than `width_tol` or cannot be
/// split further in floating point; returns the last point known to be inside.
template <class Pred>
double bisect_boundary(Pred&& is_inside, double inside, double outside, double width_tol = 0.0) {
    for (int it = 0; it < 200; ++it) {
        if (std::abs(outside - inside) <= width_tol)
            break;
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside)
            break;
        if (is_inside(mid))
            inside = mid;
        else
            outside = mid;
    }
    return inside;
}

/// Sign-change roots of `fn` on `range`: a dense scan refined by bisection.
/// Exact zeros on grid nodes do not count as a sign by themselves, so
/// tangential zeros and flat zero plateaux with equal signs on both sides are
/// not reported.
std::vector<double> zeros_in(const std::function<double(double)>& fn, Interval range,
                             const RootScanOptions& opts = {});

/// ∫_{lo}^{hi} g(y) dy for integrands with inverse-square-root endpoint
/// singularities. Uses y = m + w·sinθ, so the θ-integrand g(y)·w·cosθ is
/// bounded, then adaptive Gauss-Kronrod in θ.
double integrate_sine_substituted(const std::function<double(double)>& g, Interval range,
                                  const QuadOptions& opts = {});

/// Adaptive Gauss-Kronrod on a regular integrand.
double integrate_regular(const std::function<double(double)>& g, Interval range,
                         const QuadOptions& opts = {});

/// Runs body(i) for i in [0, n) on `threads` workers. Work is claimed by index,
/// so results written to slot i are independent of scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace wavetrap
