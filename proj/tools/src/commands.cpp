#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "wavetrap/classify.hpp"
#include "wavetrap/csv_io.hpp"
#include "wavetrap/error.hpp"
#include "wavetrap/mode_algebra.hpp"
#include "wavetrap/spectral_poincare.hpp"
#include "wavetrap/transport.hpp"
#include "wavetrap/trapping.hpp"
#include "wavetrap_cli/app.hpp"

namespace wavetrap::cli {

using nlohmann::json;

namespace {

ClassifyOptions classify_options(const RunConfig& c) {
    ClassifyOptions o;
    o.tol_sigma = c.classify.tol_sigma;
    o.bracket.tol_deg = c.classify.tol_deg;
    o.bracket.step = c.classify.step;
    o.quad = {c.quadrature.rel_tol, c.quadrature.max_depth};
    return o;
}

DriftOptions drift_options(const RunConfig& c) {
    DriftOptions o;
    o.classify = classify_options(c);
    o.integrate = integrate_options(c);
    o.trapped_tol = c.trapped_tol;
    return o;
}

QuadOptions quad_options(const RunConfig& c) {
    return {c.quadrature.rel_tol, c.quadrature.max_depth};
}

PhasePoint to_point(const Point& p) { return PhasePoint(p[0], p[1], p[2], p[3]); }

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

RunResult cmd_trace(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    IntegrateOptions io = integrate_options(c);
    io.mode = parse_mode(c.trace.mode);
    io.sample_interval = c.trace.sample_interval;
    io.backward = c.trace.backward;
    const Trajectory traj = integrate(to_point(c.trace.point), c.trace.horizon, pr, io);
    const auto x1 = wind_up_x1(traj);
    const auto [lo, hi] = std::minmax_element(x1.begin(), x1.end());
    RunResult r;
    r.files.push_back({"trajectory.csv", render([&](auto& os) { csv::write_trajectory(os, traj, pr); })});
    r.result = {{"termination", to_string(traj.termination)},
                {"samples", traj.samples.size()},
                {"steps", traj.steps},
                {"initial_energy", traj.initial_energy},
                {"invariant_drift", traj.invariant_drift},
                {"x1_range", *hi - *lo}};
    return r;
}

RunResult cmd_classify(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    std::vector<std::pair<PhasePoint, Classification>> rows;
    json classes = json::array();
    for (const Point& pt : c.points) {
        const PhasePoint p = to_point(pt);
        rows.emplace_back(p, classify(p, pr, classify_options(c)));
        classes.push_back(rows.back().second.name());
    }
    RunResult r;
    r.files.push_back({"classification.csv", render([&](auto& os) { csv::write_classifications(os, rows); })});
    r.result = {{"classes", classes}};
    return r;
}

RunResult cmd_scan(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    ScanOptions so;
    so.drift = drift_options(c);
    so.threads = static_cast<unsigned>(c.threads);
    const ScanGrid grid{c.scan.xi1.spec(), c.scan.x2_0.spec(), c.scan.xi2_0.spec()};
    const auto rows = scan_lambda(grid, pr, so);
    std::size_t trapped = 0, failed = 0;
    for (const ScanRow& row : rows) {
        trapped += row.trapped;
        failed += !row.error.empty();
    }
    RunResult r;
    r.files.push_back({"scan.csv", render([&](auto& os) { csv::write_scan(os, rows); })});
    r.result = {{"rows", rows.size()}, {"trapped", trapped}, {"errors", failed}};
    return r;
}

RunResult cmd_critper(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const PotentialReport rep = bracket(c.critper.tau, c.critper.xi1, c.critper.x2_0, pr,
                                        classify_options(c).bracket);
    RunResult r;
    r.result = {{"tau", c.critper.tau},
                {"xi1", c.critper.xi1},
                {"xmin", rep.lower.x},
                {"xmax", rep.upper.x},
                {"critper", critper(rep, quad_options(c))},
                {"period", period(rep, quad_options(c))}};
    try {
        const TrappingVerdict v = drift_from_critper(rep, c.trapped_tol, quad_options(c));
        r.result["drift"] = v.drift;
        r.result["trapped"] = v.trapped;
    } catch (const Error& e) {
        r.notes.push_back(std::string("drift not derived from critper: ") + e.what());
    }
    r.files.push_back({"critper.json", r.result.dump(2) + "\n"});
    return r;
}

RunResult cmd_lambda_sing(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const auto lobe = find_negative_lobe(pr.zonal);
    if (!lobe)
        fail(ErrorCode::OutOfWindow, "trapping", "zonal profile has no negative lobe");
    const auto& s = c.lambda_sing;
    const double h = h_of_xi1(s.xi1, *lobe, pr);
    const double x2 = h + s.position * (lobe->y2 - h);
    const PhasePoint seed = lambda_sing_point(s.x1, s.xi1, x2, *lobe, pr);
    IntegrateOptions io = integrate_options(c);
    io.sample_interval = s.sample_interval;
    const Trajectory traj = integrate(seed, s.horizon, pr, io);
    double x1_dev = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        x1_dev = std::max(x1_dev, std::abs(traj.samples[i].state.x1() - seed.x1()));
        if (i > 0 && traj.samples[i].state.x2() < traj.samples[i - 1].state.x2())
            monotone = false;
    }
    RunResult r;
    r.files.push_back({"lambda_sing.csv", render([&](auto& os) { csv::write_trajectory(os, traj, pr); })});
    r.result = {{"y1", lobe->y1}, {"y2", lobe->y2}, {"N", rho_floor(*lobe, pr)}, {"h", h},
                {"seed", {seed.x1(), seed.xi1(), seed.x2(), seed.xi2()}},
                {"tau", rossby_symbol(seed.xi1(), seed.x2(), seed.xi2(), pr)},
                {"x2_monotone", monotone}, {"max_x1_deviation", x1_dev}};
    try {
        const AsymptoticRates ar = asymptotic_rates(traj, lobe->y2, pr);
        r.result["C1"] = ar.c1;
        r.result["C2"] = ar.c2;
        r.result["exponent"] = ar.exponent;
        r.result["xi2_r2"] = ar.xi2_r2;
    } catch (const Error& e) {
        r.notes.push_back(std::string("rates unavailable: ") + e.what());
    }
    return r;
}

RunResult cmd_lambda_per(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const auto& s = c.lambda_per;
    const LambdaPerSetup setup = make_lambda_per_setup(pr, {s.xi1_lo, s.xi1_hi});
    const GridSpec grid{s.xi1_lo, s.xi1_hi, static_cast<std::size_t>(s.samples)};
    std::ostringstream os;
    os << "xi1,G\n";
    for (double xi : grid.points())
        os << csv::number(xi) << ',' << csv::number(lambda_per_G(xi, setup, pr, quad_options(c)).g)
           << '\n';
    const GRoot root = find_G_root(setup, pr, s.root_width, quad_options(c));
    const PhasePoint seed(0.0, root.xi1, root.at_root.xmax, 0.0);
    const TrappingVerdict v = drift_velocity(seed, pr, drift_options(c));
    RunResult r;
    r.files.push_back({"g_curve.csv", os.str()});
    r.result = {{"eta", setup.eta}, {"delta", setup.delta}, {"root", root.xi1},
                {"bracket", {root.bracket.lo, root.bracket.hi}}, {"slope", root.slope},
                {"xmin", root.at_root.xmin}, {"xmax", root.at_root.xmax},
                {"tau", root.at_root.tau}, {"drift_at_root", v.drift}};
    r.files.push_back({"lambda_per.json", r.result.dump(2) + "\n"});
    return r;
}

RunResult cmd_surface(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const auto pts = energy_surface_points(c.surface.tau, c.surface.xi1, c.surface.x2.spec(), pr);
    RunResult r;
    r.files.push_back({"surface.csv", render([&](auto& os) { csv::write_surface(os, pts); })});
    r.result = {{"points", pts.size()}};
    return r;
}

RunResult cmd_eigs(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const ActionProfile ap(pr.coriolis);
    std::vector<std::pair<int, double>> rows;
    for (std::uint64_t n = 0; n <= c.eigs.n_max; ++n)
        rows.emplace_back(static_cast<int>(n), bohr_sommerfeld(c.eigs.eps, static_cast<int>(n), ap));
    RunResult r;
    r.files.push_back({"eigs.csv", render([&](auto& os) { csv::write_eigs(os, rows); })});
    r.result = {{"count", rows.size()}, {"single_well", ap.single_well()}};
    if (!pr.coriolis.betaplane_slope())
        r.notes.push_back("leading-order quantization; xi1 dependence of the eigenvalues is not modelled");
    return r;
}

RunResult cmd_dispersion(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const auto beta = pr.coriolis.betaplane_slope();
    if (!beta)
        fail(ErrorCode::InvalidArgument, "spectral_poincare", "dispersion cubic needs a betaplane");
    std::vector<DispersionTriple> rows;
    for (double xi : c.dispersion.xi1.spec().points())
        for (std::uint64_t n = 0; n <= c.dispersion.n_max; ++n)
            rows.push_back(dispersion_roots(xi, static_cast<int>(n), c.dispersion.eps, *beta));
    RunResult r;
    r.files.push_back({"dispersion.csv", render([&](auto& os) { csv::write_dispersion(os, rows); })});
    r.result = {{"rows", rows.size()}};
    return r;
}

RunResult cmd_modes(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    std::mt19937_64 gen(c.seed);
    std::uniform_real_distribution<double> mag(c.modes.xi1_min, c.modes.xi1_max);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double inv = 0, det = 0, res = 0, min_det = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < c.modes.points; ++k) {
        const double xi1 = (unit(gen) < 0 ? -1.0 : 1.0) * mag(gen);
        const double x2 = c.modes.x2_range * unit(gen);
        const double xi2 = c.modes.xi2_range * unit(gen);
        const ModeMatrices m = polarization_matrices(x2, xi1, xi2, pr.coriolis);
        inv = std::max(inv, (m.q0 * m.p0 - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff());
        const double d = std::abs(m.p0.determinant());
        const double expect = polarization_det_modulus(xi1, xi2, m.b);
        det = std::max(det, std::abs(d - expect) / expect);
        min_det = std::min(min_det, d);
        for (double v : polarization_residuals(m))
            res = std::max(res, v);
    }
    RunResult r;
    r.result = {{"points", c.modes.points}, {"max_inverse_error", inv},
                {"max_det_rel_error", det}, {"min_abs_det", min_det},
                {"max_eigen_residual", res}};
    r.files.push_back({"modes.json", r.result.dump(2) + "\n"});
    return r;
}

RunResult cmd_transport(const RunConfig& c) {
    const Profiles pr = build_profiles(c);
    const auto& t = c.transport;
    const Mode mode = parse_mode(t.mode);
    auto iv = [](const std::array<double, 2>& a) { return Interval{a[0], a[1]}; };
    Ensemble e;
    const auto beta = pr.coriolis.betaplane_slope();
    if (mode == Mode::Rossby && t.trapped_circle) {
        if (!beta || !pr.zonal.is_zero())
            fail(ErrorCode::InvalidArgument, "transport",
                 "trapped_circle sampling needs a betaplane without current");
        e = sample_trapped_circle(iv(t.x1), iv(t.xi1), t.count, c.seed, *beta);
    } else {
        SampleSpec spec;
        spec.box = {iv(t.x1), iv(t.xi1), iv(t.x2), iv(t.xi2)};
        spec.count = t.count;
        spec.seed = c.seed;
        spec.mode = mode;
        spec.tol_sigma = c.classify.tol_sigma;
        e = sample_initial(spec, pr);
    }
    e.mode = mode;
    PropagateOptions po;
    po.integrate = integrate_options(c);
    po.threads = static_cast<unsigned>(c.threads);
    const SpatialBox box{iv(t.mass_x1), iv(t.mass_x2)};

    std::ostringstream snaps, mass;
    mass << "t,mass,lost\n";
    bool header = true;
    for (double time : t.times) {
        e = propagate(e, time - e.t, pr, po);
        csv::write_ensemble(snaps, e, header);
        header = false;
        mass << csv::number(e.t) << ',' << csv::number(mass_in_box(e, box)) << ','
             << csv::number(e.lost_weight() / e.total_weight()) << '\n';
    }
    RunResult r;
    r.files.push_back({"ensemble.csv", snaps.str()});
    r.files.push_back({"mass.csv", mass.str()});
    r.result = {{"particles", e.particles.size()}, {"final_mass", mass_in_box(e, box)},
                {"unscreened", e.unscreened}};
    if (mode != Mode::Rossby)
        r.notes.push_back(
            "poincare ray transport is a heuristic illustration; the escape time only mirrors "
            "the long dispersive time scale and is not a semiclassical prediction");
    return r;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"trace", "classify", "scan", "critper",
                                                "lambda-sing", "lambda-per", "surface", "eigs",
                                                "dispersion", "modes", "transport"};
    return names;
}

RunResult run_command(const std::string& name, const RunConfig& c) {
    if (name == "trace") return cmd_trace(c);
    if (name == "classify") return cmd_classify(c);
    if (name == "scan") return cmd_scan(c);
    if (name == "critper") return cmd_critper(c);
    if (name == "lambda-sing") return cmd_lambda_sing(c);
    if (name == "lambda-per") return cmd_lambda_per(c);
    if (name == "surface") return cmd_surface(c);
    if (name == "eigs") return cmd_eigs(c);
    if (name == "dispersion") return cmd_dispersion(c);
    if (name == "modes") return cmd_modes(c);
    if (name == "transport") return cmd_transport(c);
    throw ConfigError("unknown subcommand " + name);
}

}  // namespace wavetrap::cli
