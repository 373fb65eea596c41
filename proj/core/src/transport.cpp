#include "wavetrap/transport.hpp"

#include <array>
#include <cmath>
#include <random>

#include "wavetrap/classify.hpp"
#include "wavetrap/error.hpp"

namespace wavetrap {

namespace {

constexpr const char* kModule = "transport";

double radical_inverse(std::uint64_t i, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

// Halton points with a Cranley-Patterson rotation drawn from the seed.
template <std::size_t D>
class ScrambledHalton {
public:
    explicit ScrambledHalton(std::uint64_t seed) {
        std::mt19937_64 gen(seed);
        for (double& s : shift_)
            s = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    }

    std::array<double, D> next() {
        static constexpr std::array<unsigned, 4> bases{2, 3, 5, 7};
        std::array<double, D> u;
        ++index_;
        for (std::size_t d = 0; d < D; ++d) {
            const double v = radical_inverse(index_, bases[d]) + shift_[d];
            u[d] = v >= 1.0 ? v - 1.0 : v;
        }
        return u;
    }

private:
    std::array<double, D> shift_{};
    std::uint64_t index_ = 0;
};

double lerp(const Interval& i, double u) { return i.lo + u * i.width(); }

void check_interval(const Interval& i, const char* name) {
    require(std::isfinite(i.lo) && std::isfinite(i.hi) && i.lo <= i.hi, kModule,
            std::string(name) + " interval must be finite with lo <= hi");
}

}  // namespace

std::string_view to_string(ParticleStatus status) {
    switch (status) {
        case ParticleStatus::Active: return "active";
        case ParticleStatus::Lost: return "lost";
        case ParticleStatus::Capped: return "capped";
    }
    return "unknown";
}

double Ensemble::total_weight() const {
    double w = 0.0;
    for (const Particle& p : particles)
        w += p.weight;
    return w;
}

double Ensemble::lost_weight() const {
    double w = 0.0;
    for (const Particle& p : particles)
        if (p.status == ParticleStatus::Lost)
            w += p.weight;
    return w;
}

Ensemble sample_initial(const SampleSpec& spec, const Profiles& profiles) {
    const MicrolocalBox& box = spec.box;
    check_interval(box.x1, "x1");
    check_interval(box.xi1, "xi1");
    check_interval(box.x2, "x2");
    check_interval(box.xi2, "xi2");
    require(!(box.xi1.lo <= 0.0 && box.xi1.hi >= 0.0), kModule, "box touches xi1 = 0");
    require(spec.count > 0, kModule, "count must be positive");

    ScrambledHalton<4> seq(spec.seed);
    Ensemble e;
    e.mode = spec.mode;
    e.particles.reserve(spec.count);
    const double w = 1.0 / static_cast<double>(spec.count);
    const bool screen = spec.screen_sigma && spec.mode == Mode::Rossby;
    for (std::size_t k = 0; k < spec.count; ++k) {
        for (int attempt = 0;; ++attempt) {
            const auto u = seq.next();
            const PhasePoint p(lerp(box.x1, u[0]), lerp(box.xi1, u[1]), lerp(box.x2, u[2]),
                               lerp(box.xi2, u[3]));
            const bool near = screen && sigma_margin(p, profiles).overall() < spec.tol_sigma;
            if (!near || attempt >= spec.retry_budget) {
                e.unscreened += near ? 1 : 0;
                e.particles.push_back({p, w});
                break;
            }
        }
    }
    return e;
}

Ensemble sample_trapped_circle(Interval x1, Interval xi1, std::size_t count, std::uint64_t seed,
                               double beta) {
    check_interval(x1, "x1");
    check_interval(xi1, "xi1");
    require(!(xi1.lo <= 0.0 && xi1.hi >= 0.0), kModule, "xi1 interval touches 0");
    require(beta != 0.0 && count > 0, kModule, "need beta != 0 and count > 0");
    ScrambledHalton<3> seq(seed);
    Ensemble e;
    e.particles.reserve(count);
    const double w = 1.0 / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto u = seq.next();
        const double k1 = lerp(xi1, u[1]);
        const double phi = 2.0 * std::numbers::pi * u[2];
        const double r = std::abs(k1);
        e.particles.push_back(
            {PhasePoint(lerp(x1, u[0]), k1, r * std::cos(phi) / beta, r * std::sin(phi)), w});
    }
    return e;
}

Ensemble propagate(const Ensemble& e, double time, const Profiles& profiles,
                   const PropagateOptions& opts) {
    require(time >= 0.0 && std::isfinite(time), kModule, "propagation time must be >= 0");
    Ensemble out = e;
    if (time == 0.0)
        return out;
    IntegrateOptions io = opts.integrate;
    io.mode = e.mode;
    io.sample_interval = time;
    io.backward = false;
    parallel_for(out.particles.size(), opts.threads, [&](std::size_t i) {
        Particle& p = out.particles[i];
        if (p.status != ParticleStatus::Active)
            return;
        const Trajectory traj = integrate(p.state, time, profiles, io);
        p.state = traj.back().state;
        if (traj.termination == Termination::StepFailure)
            p.status = ParticleStatus::Lost;
        else if (traj.termination == Termination::Event)
            p.status = ParticleStatus::Capped;
    });
    out.t = e.t + time;
    return out;
}

double mass_in_box(const Ensemble& e, const SpatialBox& box) {
    double inside = 0.0;
    for (const Particle& p : e.particles)
        if (p.status != ParticleStatus::Lost && box.x1.contains(p.state.x1()) &&
            box.x2.contains(p.state.x2()))
            inside += p.weight;
    const double total = e.total_weight();
    return total > 0.0 ? inside / total : 0.0;
}

}  // namespace wavetrap
