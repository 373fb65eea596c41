#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "wavetrap/numerics.hpp"
#include "wavetrap/profiles.hpp"
#include "wavetrap/rossby_dynamics.hpp"

namespace wavetrap::cli {

/// Raised for anything wrong with the configuration itself; maps to exit 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZonalSpec {
    std::string kind = "zero";  // zero | bump | signed
    double center = 0.0;
    double halfwidth = 1.0;
    double amplitude = 0.0;
    double scale = 0.0;
    bool operator==(const ZonalSpec&) const = default;
};

struct CoriolisSpec {
    std::string kind = "betaplane";  // betaplane | polynomial
    double beta = 1.0;
    std::vector<double> coefficients;
    bool operator==(const CoriolisSpec&) const = default;
};

struct IntegratorSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double xi2_cap = 1e6;
    std::uint64_t max_steps = 20'000'000;
    bool operator==(const IntegratorSpec&) const = default;
};

struct QuadratureSpec {
    double rel_tol = 1e-9;
    unsigned max_depth = 15;
    bool operator==(const QuadratureSpec&) const = default;
};

struct ClassifySpec {
    double tol_sigma = 1e-6;
    double tol_deg = 1e-8;
    double step = 1e-3;
    bool operator==(const ClassifySpec&) const = default;
};

struct Grid {
    double lo = 0.0;
    double hi = 1.0;
    std::uint64_t count = 1;
    bool operator==(const Grid&) const = default;
    GridSpec spec() const { return {lo, hi, static_cast<std::size_t>(count)}; }
};

using Point = std::array<double, 4>;  // x1, xi1, x2, xi2

struct TraceSpec {
    Point point{0.0, 1.0, 0.0, 1.0};
    double horizon = 1000.0;
    double sample_interval = 0.1;
    std::string mode = "rossby";
    bool backward = false;
    bool operator==(const TraceSpec&) const = default;
};

struct ScanSpec {
    Grid xi1{1.0, 1.0, 1};
    Grid x2_0{0.0, 0.0, 1};
    Grid xi2_0{0.5, 2.0, 31};
    bool operator==(const ScanSpec&) const = default;
};

struct CritperSpec {
    double tau = 0.4;
    double xi1 = 1.0;
    double x2_0 = 0.0;
    bool operator==(const CritperSpec&) const = default;
};

struct LambdaSingSpec {
    double x1 = 0.0;
    double xi1 = -2.0;
    /// Fraction of the way from h(ξ1) to y2 for the seed latitude.
    double position = 0.5;
    double horizon = 1000.0;
    double sample_interval = 1.0;
    bool operator==(const LambdaSingSpec&) const = default;
};

struct LambdaPerSpec {
    double xi1_lo = 1.0;
    double xi1_hi = 50.0;
    std::uint64_t samples = 200;
    double root_width = 1e-6;
    bool operator==(const LambdaPerSpec&) const = default;
};

struct SurfaceSpec {
    double tau = 0.5;
    double xi1 = 1.0;
    Grid x2{-2.0, 2.0, 401};
    bool operator==(const SurfaceSpec&) const = default;
};

struct EigsSpec {
    double eps = 0.1;
    std::uint64_t n_max = 100;
    bool operator==(const EigsSpec&) const = default;
};

struct DispersionSpec {
    double eps = 0.1;
    std::uint64_t n_max = 3;
    Grid xi1{0.5, 3.0, 26};
    bool operator==(const DispersionSpec&) const = default;
};

struct ModesSpec {
    std::uint64_t points = 1000;
    double xi1_min = 0.1;
    double xi1_max = 10.0;
    double x2_range = 10.0;
    double xi2_range = 10.0;
    bool operator==(const ModesSpec&) const = default;
};

struct TransportSpec {
    std::string mode = "rossby";
    /// Place Rossby particles on the trapped betaplane circle instead of the box.
    bool trapped_circle = true;
    std::array<double, 2> x1{-0.5, 0.5};
    std::array<double, 2> xi1{1.0, 2.0};
    std::array<double, 2> x2{-0.5, 0.5};
    std::array<double, 2> xi2{-0.5, 0.5};
    std::uint64_t count = 1000;
    std::vector<double> times{0.0, 10.0, 100.0, 1000.0};
    std::array<double, 2> mass_x1{-1.0, 1.0};
    std::array<double, 2> mass_x2{-3.0, 3.0};
    bool operator==(const TransportSpec&) const = default;
};

struct RunConfig {
    ZonalSpec zonal;
    CoriolisSpec coriolis;
    IntegratorSpec integrator;
    QuadratureSpec quadrature;
    ClassifySpec classify;
    double trapped_tol = 1e-6;
    std::string output_dir = "out";
    std::uint64_t threads = 1;
    std::uint64_t seed = 0;

    TraceSpec trace;
    std::vector<Point> points{{0.0, 1.0, 0.0, 1.0}};
    ScanSpec scan;
    CritperSpec critper;
    LambdaSingSpec lambda_sing;
    LambdaPerSpec lambda_per;
    SurfaceSpec surface;
    EigsSpec eigs;
    DispersionSpec dispersion;
    ModesSpec modes;
    TransportSpec transport;

    bool operator==(const RunConfig&) const = default;
};

/// Strict parse: unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);
/// Checks ranges (positive tolerances, threads ≥ 1, ...).
void validate(const RunConfig& c);

Profiles build_profiles(const RunConfig& c);
Mode parse_mode(const std::string& s);
IntegrateOptions integrate_options(const RunConfig& c);

}  // namespace wavetrap::cli
