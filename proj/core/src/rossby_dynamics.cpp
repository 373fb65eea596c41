#include "wavetrap/rossby_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "rossby_dynamics";

using State = std::array<double, 3>;  // x1, x2, ξ2

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct System {
    Mode mode;
    double xi1;
    const Profiles& profiles;

    State rhs(const State& y) const {
        const VectorField v = mode_vector_field(mode, PhasePoint(y[0], xi1, y[1], y[2]), profiles);
        return {v.dx1, v.dx2, v.dxi2};
    }
    double energy(const State& y) const { return mode_energy(mode, xi1, y[1], y[2], profiles); }
};

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [coef, k] : terms)
        for (int i = 0; i < 3; ++i)
            out[i] += h * coef * (*k)[i];
    return out;
}

bool finite(const State& y) {
    return std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]);
}

// Cubic Hermite interpolation across an accepted step.
struct DenseStep {
    double t0, h;
    State y0, y1, f0, f1;

    State at(double t) const {
        const double s = (t - t0) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        State out;
        for (int i = 0; i < 3; ++i)
            out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
        return out;
    }
};

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / sc;
        acc += r * r;
    }
    return std::sqrt(acc / 3.0);
}

double initial_step(const System& sys, const State& y0, const State& f0, double atol,
                    double rtol, double span) {
    auto norm = [&](const State& v) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double r = v[i] / (atol + rtol * std::abs(y0[i]));
            acc += r * r;
        }
        return std::sqrt(acc / 3.0);
    };
    const double d0 = norm(y0), d1 = norm(f0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const State y1 = axpy(y0, h0, {{1.0, &f0}});
    const State f1 = sys.rhs(y1);
    State df;
    for (int i = 0; i < 3; ++i)
        df[i] = f1[i] - f0[i];
    const double d2 = norm(df) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
}

struct EventProbe {
    EventKind kind;
    bool terminal;
};

}  // namespace

PhasePoint::PhasePoint(double x1, double xi1, double x2, double xi2)
    : x1_(x1), xi1_(xi1), x2_(x2), xi2_(xi2) {
    if (xi1 == 0.0)
        fail(ErrorCode::InvalidArgument, kModule, "phase point requires xi1 != 0");
    if (!std::isfinite(x1) || !std::isfinite(xi1) || !std::isfinite(x2) || !std::isfinite(xi2))
        fail(ErrorCode::InvalidArgument, kModule, "phase point coordinates must be finite");
}

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Rossby: return "rossby";
        case Mode::PoincarePlus: return "poincare+";
        case Mode::PoincareMinus: return "poincare-";
    }
    return "unknown";
}

std::string_view to_string(Termination reason) {
    switch (reason) {
        case Termination::Horizon: return "horizon";
        case Termination::Event: return "event";
        case Termination::StepFailure: return "step-failure";
    }
    return "unknown";
}

double rossby_symbol(double xi1, double x2, double xi2, const Profiles& profiles) {
    if (xi1 == 0.0)
        fail(ErrorCode::InvalidArgument, kModule, "rossby symbol requires xi1 != 0");
    const Jet b = profiles.coriolis.eval(x2);
    const double u = profiles.zonal.value(x2);
    return b.d1 * xi1 / (xi1 * xi1 + xi2 * xi2 + b.value * b.value) + u * xi1;
}

VectorField rossby_vector_field(const PhasePoint& p, const Profiles& profiles) {
    const double xi1 = p.xi1(), xi2 = p.xi2();
    const Jet b = profiles.coriolis.eval(p.x2());
    const Jet u = profiles.zonal.eval(p.x2());
    const double b2 = b.value * b.value;
    const double d = xi1 * xi1 + xi2 * xi2 + b2;
    const double d_sq = d * d;
    return {
        u.value + b.d1 * (-xi1 * xi1 + xi2 * xi2 + b2) / d_sq,
        -2.0 * b.d1 * xi1 * xi2 / d_sq,
        -u.d1 * xi1 + 2.0 * b.value * b.d1 * b.d1 * xi1 / d_sq - b.d2 * xi1 / d,
    };
}

double mode_energy(Mode mode, double xi1, double x2, double xi2, const Profiles& profiles) {
    if (mode == Mode::Rossby)
        return rossby_symbol(xi1, x2, xi2, profiles);
    const double b = profiles.coriolis.value(x2);
    const double s = std::sqrt(xi1 * xi1 + xi2 * xi2 + b * b);
    return mode == Mode::PoincarePlus ? s : -s;
}

VectorField mode_vector_field(Mode mode, const PhasePoint& p, const Profiles& profiles) {
    if (mode == Mode::Rossby)
        return rossby_vector_field(p, profiles);
    const Jet b = profiles.coriolis.eval(p.x2());
    const double sign = mode == Mode::PoincarePlus ? 1.0 : -1.0;
    const double s = std::sqrt(p.xi1() * p.xi1() + p.xi2() * p.xi2() + b.value * b.value);
    return {sign * p.xi1() / s, sign * p.xi2() / s, -sign * b.value * b.d1 / s};
}

Trajectory integrate(const PhasePoint& p0, double horizon, const Profiles& profiles,
                     const IntegrateOptions& opts, const EventSpec& events) {
    require(horizon > 0.0 && std::isfinite(horizon), kModule, "horizon must be positive");
    require(opts.abs_tol > 0.0 && opts.rel_tol > 0.0, kModule, "tolerances must be positive");
    require(opts.sample_interval >= 0.0, kModule, "sample interval must be non-negative");

    const System sys{opts.mode, p0.xi1(), profiles};
    const double dir = opts.backward ? -1.0 : 1.0;
    const double t_end = dir * horizon;
    auto point = [&](const State& y) { return PhasePoint(y[0], p0.xi1(), y[1], y[2]); };

    Trajectory traj;
    traj.mode = opts.mode;
    State y{p0.x1(), p0.x2(), p0.xi2()};
    State f = sys.rhs(y);
    double t = 0.0;
    traj.initial_energy = sys.energy(y);
    traj.samples.push_back({0.0, p0});

    auto track_energy = [&](const State& s) {
        traj.invariant_drift =
            std::max(traj.invariant_drift, std::abs(sys.energy(s) - traj.initial_energy));
    };

    // Event functions; each returns a value whose sign flip marks the event.
    // The marker distance is signed from the side the step starts on, so a
    // step that jumps across the threshold window still registers.
    double marker_side = 1.0;
    auto g_value = [&](EventKind kind, const State& s) {
        switch (kind) {
            case EventKind::Xi2SignChange: return s[2];
            case EventKind::MarkerReached:
                return marker_side * (s[1] - *events.x2_marker) - events.marker_threshold;
            case EventKind::Xi2Cap: return std::abs(s[2]) - opts.xi2_cap;
        }
        return 0.0;
    };
    auto triggered = [&](EventKind kind, double g0, double g1) {
        switch (kind) {
            case EventKind::Xi2SignChange: return g0 != 0.0 && (g0 * g1 < 0.0 || g1 == 0.0);
            case EventKind::MarkerReached: return g0 > 0.0 && g1 <= 0.0;
            case EventKind::Xi2Cap: return g0 < 0.0 && g1 >= 0.0;
        }
        return false;
    };
    std::vector<EventKind> active{EventKind::Xi2Cap};
    if (events.xi2_sign_change)
        active.push_back(EventKind::Xi2SignChange);
    if (events.x2_marker)
        active.push_back(EventKind::MarkerReached);
    int sign_changes = 0;

    double next_sample = opts.sample_interval > 0.0 ? dir * opts.sample_interval : 0.0;
    std::size_t sample_index = 1;
    auto emit_samples_until = [&](const DenseStep& step, double t_stop) {
        if (opts.sample_interval <= 0.0)
            return;
        while (dir * (next_sample - t_stop) <= 0.0 && dir * (next_sample - t_end) < 0.0) {
            traj.samples.push_back({next_sample, point(step.at(next_sample))});
            ++sample_index;
            next_sample = dir * opts.sample_interval * static_cast<double>(sample_index);
        }
    };

    const double span = std::abs(t_end);
    double h = initial_step(sys, y, f, opts.abs_tol, opts.rel_tol, span);
    bool done = false;

    while (!done) {
        if (traj.steps >= opts.max_steps) {
            traj.termination = Termination::StepFailure;
            break;
        }
        const double remaining = std::abs(t_end - t);
        if (remaining <= 1e-14 * std::max(1.0, std::abs(t_end)))
            break;
        h = std::min(h, remaining);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) {
            traj.termination = Termination::StepFailure;
            break;
        }

        const double s = dir * h;
        const State k1 = f;
        const State k2 = sys.rhs(axpy(y, s, {{a21, &k1}}));
        const State k3 = sys.rhs(axpy(y, s, {{a31, &k1}, {a32, &k2}}));
        const State k4 = sys.rhs(axpy(y, s, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = sys.rhs(axpy(y, s, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            sys.rhs(axpy(y, s, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new =
            axpy(y, s, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = sys.rhs(y_new);
        State err;
        for (int i = 0; i < 3; ++i)
            err[i] = s * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);

        if (!finite(y_new) || !finite(err)) {
            h *= 0.25;
            continue;
        }
        const double en = error_norm(err, y, y_new, opts.abs_tol, opts.rel_tol);
        if (en > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            continue;
        }

        ++traj.steps;
        const DenseStep step{t, s, y, y_new, f, k7};
        const double t_new = (std::abs(t_end - (t + s)) <= 1e-14 * std::max(1.0, span))
                                 ? t_end
                                 : t + s;

        // Earliest event inside this step.
        std::optional<std::pair<double, EventProbe>> hit;
        if (events.x2_marker)
            marker_side = y[1] < *events.x2_marker ? -1.0 : 1.0;
        for (EventKind kind : active) {
            const double g0 = g_value(kind, y), g1 = g_value(kind, y_new);
            if (!triggered(kind, g0, g1))
                continue;
            // bisection in time on the dense output
            double lo = t, hi = t_new;
            while (std::abs(hi - lo) > events.time_tol) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi)
                    break;
                if (triggered(kind, g0, g_value(kind, step.at(mid))))
                    hi = mid;
                else
                    lo = mid;
            }
            bool terminal = kind != EventKind::Xi2SignChange;
            if (kind == EventKind::Xi2SignChange && events.stop_after_sign_changes > 0)
                terminal = sign_changes + 1 >= events.stop_after_sign_changes;
            if (!hit || dir * (hi - hit->first) < 0.0)
                hit = std::make_pair(hi, EventProbe{kind, terminal});
        }

        if (hit) {
            const double te = hit->first;
            const State ye = (te == t_new) ? y_new : step.at(te);
            traj.events.push_back({te, hit->second.kind, point(ye)});
            if (hit->second.kind == EventKind::Xi2SignChange)
                ++sign_changes;
            if (hit->second.terminal) {
                emit_samples_until(step, te);
                track_energy(ye);
                if (traj.samples.back().t != te)
                    traj.samples.push_back({te, point(ye)});
                traj.termination = Termination::Event;
                y = ye;
                t = te;
                break;
            }
        }

        emit_samples_until(step, t_new);
        t = t_new;
        y = y_new;
        f = k7;
        track_energy(y);
        if (opts.sample_interval <= 0.0)
            traj.samples.push_back({t, point(y)});
        if (t == t_end)
            done = true;

        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-12), -0.2)));
    }

    if (traj.samples.back().t != t)
        traj.samples.push_back({t, point(y)});
    for (const Sample& smp : traj.samples)
        track_energy({smp.state.x1(), smp.state.x2(), smp.state.xi2()});
    return traj;
}

std::vector<double> wind_up_x1(const Trajectory& traj) {
    require(!traj.samples.empty(), kModule, "trajectory is empty");
    std::vector<double> out;
    out.reserve(traj.samples.size());
    const double x0 = traj.samples.front().state.x1();
    for (const Sample& s : traj.samples)
        out.push_back(s.state.x1() - x0);
    return out;
}

}  // namespace wavetrap
