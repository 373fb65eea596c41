#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "wavetrap/profiles.hpp"

namespace wavetrap {

/// A point (x1, ξ1, x2, ξ2) of the cotangent space. ξ1 ≠ 0 is enforced.
class PhasePoint {
public:
    PhasePoint(double x1, double xi1, double x2, double xi2);

    double x1() const { return x1_; }
    double xi1() const { return xi1_; }
    double x2() const { return x2_; }
    double xi2() const { return xi2_; }

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;

private:
    double x1_, xi1_, x2_, xi2_;
};

/// Which Hamiltonian drives the flow.
enum class Mode { Rossby, PoincarePlus, PoincareMinus };

std::string_view to_string(Mode mode);

/// Right-hand side of the reduced system; ξ̇1 ≡ 0 is not represented.
struct VectorField {
    double dx1 = 0.0;
    double dx2 = 0.0;
    double dxi2 = 0.0;
};

/// Rossby principal symbol b'ξ1/(ξ1² + ξ2² + b²) + ū1 ξ1.
double rossby_symbol(double xi1, double x2, double xi2, const Profiles& profiles);
VectorField rossby_vector_field(const PhasePoint& p, const Profiles& profiles);

/// Energy for the requested mode: the Rossby symbol or τ± = ±√(ξ1² + ξ2² + b²).
double mode_energy(Mode mode, double xi1, double x2, double xi2, const Profiles& profiles);
VectorField mode_vector_field(Mode mode, const PhasePoint& p, const Profiles& profiles);

struct IntegrateOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Spacing of the uniform output grid; 0 records every accepted step.
    double sample_interval = 0.0;
    /// Integrate towards negative times when set.
    bool backward = false;
    /// |ξ2| ceiling; reaching it ends the run with reason Event.
    double xi2_cap = 1e6;
    std::size_t max_steps = 20'000'000;
    Mode mode = Mode::Rossby;
};

enum class EventKind { Xi2SignChange, MarkerReached, Xi2Cap };

struct EventSpec {
    bool xi2_sign_change = false;
    /// Stop after this many ξ2 sign changes; 0 keeps integrating.
    int stop_after_sign_changes = 0;
    std::optional<double> x2_marker;
    double marker_threshold = 1e-6;
    double time_tol = 1e-10;
};

struct Sample {
    double t;
    PhasePoint state;
};

struct Event {
    double t;
    EventKind kind;
    PhasePoint state;
};

enum class Termination { Horizon, Event, StepFailure };

std::string_view to_string(Termination reason);

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Event> events;
    double initial_energy = 0.0;
    /// max |energy(state) − initial energy| over accepted steps and samples.
    double invariant_drift = 0.0;
    Termination termination = Termination::Horizon;
    std::size_t steps = 0;
    Mode mode = Mode::Rossby;

    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
};

/// Adaptive Dormand-Prince 5(4) integration of (x1, x2, ξ2) with ξ1 frozen.
Trajectory integrate(const PhasePoint& p0, double horizon, const Profiles& profiles,
                     const IntegrateOptions& opts = {}, const EventSpec& events = {});

/// x1(t) − x1(0) per sample.
std::vector<double> wind_up_x1(const Trajectory& traj);

}  // namespace wavetrap
