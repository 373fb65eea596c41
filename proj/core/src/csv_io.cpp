#include "wavetrap/csv_io.hpp"

#include <cstdio>

namespace wavetrap::csv {

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

void write_trajectory(std::ostream& os, const Trajectory& traj, const Profiles& profiles) {
    os << kTrajectoryHeader << '\n';
    for (const Sample& s : traj.samples) {
        const PhasePoint& p = s.state;
        os << number(s.t) << ',' << number(p.x1()) << ',' << number(p.xi1()) << ','
           << number(p.x2()) << ',' << number(p.xi2()) << ','
           << number(mode_energy(traj.mode, p.xi1(), p.x2(), p.xi2(), profiles)) << '\n';
    }
}

void write_surface(std::ostream& os, const std::vector<SurfacePoint>& points) {
    os << kSurfaceHeader << '\n';
    for (const SurfacePoint& s : points)
        os << number(s.x2) << ',' << number(s.xi2_plus) << ',' << number(s.xi2_minus) << ','
           << number(s.v) << '\n';
}

void write_classifications(std::ostream& os,
                           const std::vector<std::pair<PhasePoint, Classification>>& rows) {
    os << kClassificationHeader << '\n';
    for (const auto& [p, c] : rows)
        os << number(p.x1()) << ',' << number(p.xi1()) << ',' << number(p.x2()) << ','
           << number(p.xi2()) << ',' << number(c.tau) << ',' << c.name() << ','
           << number(c.t_or_x2inf()) << ',' << number(c.margin.overall()) << '\n';
}

void write_scan(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << kScanHeader << '\n';
    for (const ScanRow& r : rows)
        os << number(r.xi1) << ',' << number(r.x2_0) << ',' << number(r.xi2_0) << ','
           << number(r.tau) << ',' << field(r.cls) << ',' << number(r.margin) << ','
           << number(r.drift) << ',' << (r.trapped ? 1 : 0) << ',' << field(r.error) << '\n';
}

void write_eigs(std::ostream& os, const std::vector<std::pair<int, double>>& rows) {
    os << kEigsHeader << '\n';
    for (const auto& [n, lambda] : rows)
        os << n << ',' << number(lambda) << '\n';
}

void write_dispersion(std::ostream& os, const std::vector<DispersionTriple>& rows) {
    os << kDispersionHeader << '\n';
    for (const DispersionTriple& d : rows)
        os << number(d.xi1) << ',' << d.n << ',' << number(d.tau_minus) << ','
           << number(d.tau_r) << ',' << number(d.tau_plus) << '\n';
}

void write_ensemble(std::ostream& os, const Ensemble& e, bool header) {
    if (header)
        os << kEnsembleHeader << '\n';
    for (const Particle& p : e.particles)
        os << number(e.t) << ',' << number(p.state.x1()) << ',' << number(p.state.xi1()) << ','
           << number(p.state.x2()) << ',' << number(p.state.xi2()) << ',' << number(p.weight)
           << ',' << to_string(p.status) << '\n';
}

}  // namespace wavetrap::csv
