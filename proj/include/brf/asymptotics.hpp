#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brf/types.hpp"

namespace brf {

struct ExponentFit {
  double exponent = 0.0;   // slope p of log(value) vs log(T+ - t) (or log t)
  double prefactor = 0.0;  // exp(intercept)
  double residual = 0.0;   // max |log residual| over the fit window
};

/// Blow-up time estimate plus per-coefficient power-law fits.
struct SingularityReport {
  double t_plus = 0.0;
  int blowup_index = 0;  // 1-based coefficient that drives the fit
  std::map<std::string, ExponentFit> exponents;  // keys "A", "B", "C"
  double fit_window_begin = 0.0;
  double fit_window_end = 0.0;
  double residual = 0.0;  // max relative residual of the T+ fit
};

enum class SL2RCaseTag {
  Case1ADominates,   // some time with A >= B
  Case2BDominates,   // some time with A <= B - C
  Case3Balanced,     // A < B < A + C up to the certification horizon
};

std::string_view sl2r_case_name(SL2RCaseTag tag);

struct SL2RCase {
  SL2RCaseTag tag = SL2RCaseTag::Case3Balanced;
  std::optional<double> witness_time{};  // cases 1 and 2 only
  double certification_horizon = 0.0;    // case 3: condition checked up to here
  // Case 3 extras: the fitted linear law of the vanishing coefficient.
  std::optional<double> t_plus{};
  std::optional<ExponentFit> c_law{};
};

/// Lag-free linear fit of X^(-2) over the final decade of the blowing-up
/// coefficient's growth; the root of the line estimates T+. Requires a
/// trajectory stopped by blowup_detected or step_underflow.
double estimate_blowup_time(const Trajectory& traj);

/// Full report: T+ plus log-log exponent fits for all three coefficients.
SingularityReport singularity_report(const Trajectory& traj);

/// Least-squares fit of log(value) against log(t_plus - t) over the last
/// decade of time-to-singularity. Pass t_plus = +infinity for laws that are
/// polynomial in t itself; the fit then uses log(t) over the last decade of
/// t. Throws on non-positive values or fewer than 10 window points.
ExponentFit fit_exponent(const std::vector<double>& t,
                         const std::vector<double>& value, double t_plus);

/// Sign pattern and ordering of the Ricci components that a regime requires.
/// signs[i] in {-1, 0, +1}: required sign of R_(i+1)(i+1), 0 = unconstrained.
/// order: 1-based permutation; R_order[0] >= R_order[1] >= R_order[2].
struct RicciPattern {
  std::array<int, 3> signs{0, 0, 0};
  std::array<int, 3> order{1, 2, 3};
};

/// First sample time after which the pattern holds at every remaining
/// sample, or nullopt when it never persists to the end.
std::optional<double> detect_tau(const Trajectory& traj,
                                 const RicciPattern& pattern);

/// Classifies SL(2,R) initial data (with B0 >= C0) by integrating until a
/// stop: case 1 at the first sample with A >= B, case 2 at the first sample
/// with A <= B - C, case 3 when A < B < A + C held through the whole run.
SL2RCase classify_sl2r(const MetricState& initial,
                       const IntegratorConfig& config);

/// Same classification applied to an already-integrated trajectory.
SL2RCase classify_sl2r_trajectory(const Trajectory& traj);

/// Dual (co-metric) components of the rescaled metric at the singular stop:
/// the trajectory is rescaled by s0/s(t) where s is the slowest-decaying
/// vanishing coefficient; blowing-up directions limit to 0. Requires a
/// blow-up stop with at least one vanishing coefficient.
std::array<double, 3> subriemannian_limit(const Trajectory& traj);

}  // namespace brf
