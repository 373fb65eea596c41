#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavetrap/classify.hpp"
#include "wavetrap/reduced_phase.hpp"
#include "wavetrap/spectral_poincare.hpp"
#include "wavetrap/transport.hpp"
#include "wavetrap/trapping.hpp"

namespace wavetrap::csv {

inline constexpr std::string_view kTrajectoryHeader = "t,x1,xi1,x2,xi2,tau";
inline constexpr std::string_view kSurfaceHeader = "x2,xi2_plus,xi2_minus,V";
inline constexpr std::string_view kClassificationHeader = "x1,xi1,x2,xi2,tau,class,T_or_x2inf,margin";
inline constexpr std::string_view kScanHeader = "xi1,x2_0,xi2_0,tau,class,margin,drift,trapped,error";
inline constexpr std::string_view kEigsHeader = "n,lambda";
inline constexpr std::string_view kDispersionHeader = "xi1,n,tau_minus,tau_R,tau_plus";
inline constexpr std::string_view kEnsembleHeader = "t,x1,xi1,x2,xi2,weight,status";

/// Shortest form that round-trips: 17 significant digits.
std::string number(double v);
/// Quotes fields holding commas, quotes or newlines.
std::string field(std::string_view s);

void write_trajectory(std::ostream& os, const Trajectory& traj, const Profiles& profiles);
void write_surface(std::ostream& os, const std::vector<SurfacePoint>& points);
void write_classifications(std::ostream& os,
                           const std::vector<std::pair<PhasePoint, Classification>>& rows);
void write_scan(std::ostream& os, const std::vector<ScanRow>& rows);
void write_eigs(std::ostream& os, const std::vector<std::pair<int, double>>& rows);
void write_dispersion(std::ostream& os, const std::vector<DispersionTriple>& rows);
/// Appends one snapshot; the header is written when `header` is set.
void write_ensemble(std::ostream& os, const Ensemble& e, bool header = true);

}  // namespace wavetrap::csv
