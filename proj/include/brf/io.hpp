#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brf/asymptotics.hpp"
#include "brf/spectrum.hpp"
#include "brf/types.hpp"

namespace brf {

/// Full-precision CSV with header t,A,B,C,R11,R22,R33,R; numbers printed
/// with 17 significant digits so that re-parsing round-trips exactly.
std::string trajectory_to_csv(const Trajectory& traj);

/// Rebuilds a trajectory from a CSV produced by trajectory_to_csv. The stop
/// reason is not stored in the CSV and must be supplied; volume statistics
/// are recomputed, integrator metadata is NaN.
Trajectory trajectory_from_csv(BianchiClass cls, const std::string& csv,
                               StopReason stop_reason);

/// CSV with header t,lambda_low,lambda_high plus one m<i>_<low|high> column
/// per monotone quantity.
std::string envelope_to_csv(const std::vector<EnvelopePoint>& envelope,
                            const std::vector<MonotoneQuantity>& monotone);

/// Post-run analysis of a trajectory: everything in the JSON report that is
/// a pure function of the sampled data.
struct RunAnalysis {
  std::optional<double> t_plus{};
  // One fit per coefficient; a missing entry means the fit was not
  // attemptable (for example too few window samples).
  std::vector<std::pair<std::string, std::optional<ExponentFit>>> exponents;
  std::optional<double> tau{};
  bool fixed_point = false;
  std::optional<SL2RCase> sl2r{};
};

RunAnalysis analyze_trajectory(const Trajectory& traj);

/// JSON text (single object) for the report of a run; analysis fields are
/// reproducible from the trajectory CSV alone.
std::string report_json(const Trajectory& traj, double lambda0,
                        const RunAnalysis& analysis);

}  // namespace brf
