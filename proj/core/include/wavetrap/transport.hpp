#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wavetrap/rossby_dynamics.hpp"

namespace wavetrap {

/// Axis-aligned box in (x1, ξ1, x2, ξ2).
struct MicrolocalBox {
    Interval x1;
    Interval xi1;
    Interval x2;
    Interval xi2;
};

/// Box in physical space (x1, x2).
struct SpatialBox {
    Interval x1;
    Interval x2;
};

enum class ParticleStatus { Active, Lost, Capped };

std::string_view to_string(ParticleStatus status);

struct Particle {
    PhasePoint state;
    double weight;
    ParticleStatus status = ParticleStatus::Active;
};

/// Weighted point cloud standing in for a Wigner measure.
struct Ensemble {
    std::vector<Particle> particles;
    Mode mode = Mode::Rossby;
    double t = 0.0;
    /// Draws that still sat within tol_Σ of the pathological set after the
    /// retry budget was spent.
    std::size_t unscreened = 0;

    double total_weight() const;
    double lost_weight() const;
};

struct SampleSpec {
    MicrolocalBox box;
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    Mode mode = Mode::Rossby;
    /// Redraw Rossby points whose sigma margin is below tol_sigma.
    bool screen_sigma = true;
    double tol_sigma = 1e-6;
    int retry_budget = 16;
};

/// Scrambled Halton sampling of the box with equal weights summing to 1.
Ensemble sample_initial(const SampleSpec& spec, const Profiles& profiles);

/// Points of the trapped betaplane circle ξ2² + β²x2² = ξ1², uniform in x1,
/// ξ1 and the circle angle.
Ensemble sample_trapped_circle(Interval x1, Interval xi1, std::size_t count, std::uint64_t seed,
                               double beta);

struct PropagateOptions {
    IntegrateOptions integrate;
    unsigned threads = 1;
};

/// Moves every active particle along the flow of the ensemble's mode.
Ensemble propagate(const Ensemble& e, double time, const Profiles& profiles,
                   const PropagateOptions& opts = {});

/// Weight of non-lost particles inside the box over the total weight.
double mass_in_box(const Ensemble& e, const SpatialBox& box);

}  // namespace wavetrap
