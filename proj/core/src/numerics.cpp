#include "wavetrap/numerics.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wavetrap {

std::vector<double> GridSpec::points() const {
    std::vector<double> out;
    if (count == 0)
        return out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(i + 1 == count ? hi : lo + step * static_cast<double>(i));
    return out;
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

std::vector<double> zeros_in(const std::function<double(double)>& fn, Interval range,
                             const RootScanOptions& opts) {
    std::vector<double> roots;
    const std::size_t cells = std::max<std::size_t>(opts.cells, 1);
    const double step = range.width() / static_cast<double>(cells);

    double last_x = range.lo;
    int last_sign = sign_of(fn(range.lo));
    for (std::size_t i = 1; i <= cells; ++i) {
        const double x = (i == cells) ? range.hi : range.lo + step * static_cast<double>(i);
        const int s = sign_of(fn(x));
        if (s == 0)
            continue;
        if (last_sign != 0 && s != last_sign) {
            const int ref = last_sign;
            const double inside = bisect_boundary(
                [&](double y) { return sign_of(fn(y)) == ref; }, last_x, x, opts.tol);
            roots.push_back(inside);
        }
        last_sign = s;
        last_x = x;
    }
    return roots;
}

double integrate_sine_substituted(const std::function<double(double)>& g, Interval range,
                                  const QuadOptions& opts) {
    const double m = range.mid();
    const double w = 0.5 * range.width();
    if (w <= 0.0)
        return 0.0;
    auto integrand = [&](double theta) {
        const double y = m + w * std::sin(theta);
        return g(y) * w * std::cos(theta);
    };
    constexpr double half_pi = std::numbers::pi / 2;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, -half_pi, half_pi, opts.max_depth, opts.rel_tol);
}

double integrate_regular(const std::function<double(double)>& g, Interval range,
                         const QuadOptions& opts) {
    if (range.width() == 0.0)
        return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        g, range.lo, range.hi, opts.max_depth, opts.rel_tol);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (n == 0)
        return;
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!first_error)
                            first_error = std::current_exception();
                    }
                }
            });
        }
    }
    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace wavetrap
