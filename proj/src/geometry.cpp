#include "brf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace brf {

namespace {

// Coefficients below the lower limit would make the downstream divisions
// (volume ratios, dual components) meaningless; above the upper limit the
// cubic curvature terms overflow.
constexpr double kMinCoefficient = 1e-300;
constexpr double kMaxCoefficient = 1e100;

[[noreturn]] void throw_bad_state(const MetricState& s) {
  throw std::invalid_argument(
      "metric coefficients must be positive, finite and non-degenerate: A=" +
      std::to_string(s.a) + " B=" + std::to_string(s.b) +
      " C=" + std::to_string(s.c));
}

}  // namespace

double MetricState::coefficient(int index) const {
  switch (index) {
    case 1: return a;
    case 2: return b;
    case 3: return c;
    default: throw std::invalid_argument("coefficient index must be 1, 2 or 3");
  }
}

double CurvatureData::component(int ricci_index) const {
  switch (ricci_index) {
    case 1: return r11;
    case 2: return r22;
    case 3: return r33;
    default: throw std::invalid_argument("ricci index must be 1, 2 or 3");
  }
}

double CurvatureData::max_component() const {
  return std::max({r11, r22, r33});
}

double CurvatureData::min_component() const {
  return std::min({r11, r22, r33});
}

std::string_view class_name(BianchiClass cls) {
  switch (cls) {
    case BianchiClass::Heisenberg: return "heisenberg";
    case BianchiClass::SU2: return "su2";
    case BianchiClass::E11: return "e11";
    case BianchiClass::E2: return "e2";
    case BianchiClass::SL2R: return "sl2r";
  }
  return "unknown";
}

std::optional<BianchiClass> class_from_name(std::string_view name) {
  for (BianchiClass cls : kAllClasses)
    if (name == class_name(cls)) return cls;
  return std::nullopt;
}

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::HorizonReached: return "horizon_reached";
    case StopReason::BlowupDetected: return "blowup_detected";
    case StopReason::StepUnderflow: return "step_underflow";
    case StopReason::StepBudget: return "step_budget";
  }
  return "unknown";
}

std::optional<StopReason> stop_reason_from_name(std::string_view name) {
  for (StopReason r : {StopReason::HorizonReached, StopReason::BlowupDetected,
                       StopReason::StepUnderflow, StopReason::StepBudget})
    if (name == stop_reason_name(r)) return r;
  return std::nullopt;
}

void validate_state(const MetricState& s) {
  for (double x : {s.a, s.b, s.c})
    if (!(x > kMinCoefficient && x < kMaxCoefficient)) throw_bad_state(s);
}

StructureConstants structure_constants(BianchiClass cls) {
  switch (cls) {
    case BianchiClass::Heisenberg: return {1, 0, 0};
    case BianchiClass::SU2: return {1, 1, 1};
    case BianchiClass::E11: return {1, 0, -1};
    case BianchiClass::E2: return {1, 1, 0};
    case BianchiClass::SL2R: return {-1, 1, 1};
  }
  throw std::invalid_argument("unknown Bianchi class");
}

CurvatureData curvature(BianchiClass cls, const MetricState& s) {
  validate_state(s);
  const double a = s.a, b = s.b, c = s.c;
  CurvatureData out;
  switch (cls) {
    case BianchiClass::Heisenberg:
      out.r11 = 0.5 * a * a * a;
      out.r22 = -0.5 * a * a * b;
      out.r33 = -0.5 * a * a * c;
      out.scalar = -0.5 * a * a;
      break;
    case BianchiClass::SU2:
      out.r11 = 0.5 * a * (a * a - (b - c) * (b - c));
      out.r22 = 0.5 * b * (b * b - (a - c) * (a - c));
      out.r33 = 0.5 * c * (c * c - (a - b) * (a - b));
      out.scalar = 0.5 * (a * a - (b - c) * (b - c)) +
                   0.5 * (b * b - (a - c) * (a - c)) +
                   0.5 * (c * c - (a - b) * (a - b));
      break;
    case BianchiClass::E11:
      out.r11 = 0.5 * a * (a * a - c * c);
      out.r22 = -0.5 * b * (a + c) * (a + c);
      out.r33 = 0.5 * c * (c * c - a * a);
      out.scalar = -0.5 * (a + c) * (a + c);
      break;
    case BianchiClass::E2:
      out.r11 = 0.5 * a * (a * a - b * b);
      out.r22 = 0.5 * b * (b * b - a * a);
      out.r33 = -0.5 * c * (a - b) * (a - b);
      out.scalar = -0.5 * (a - b) * (a - b);
      break;
    case BianchiClass::SL2R:
      out.r11 = 0.5 * a * (a * a - (b - c) * (b - c));
      out.r22 = 0.5 * b * (b * b - (a + c) * (a + c));
      out.r33 = 0.5 * c * (c * c - (a + b) * (a + b));
      out.scalar = 0.5 * (a * a - (b - c) * (b - c)) +
                   0.5 * (b * b - (a + c) * (a + c)) +
                   0.5 * (c * c - (a + b) * (a + b));
      break;
  }
  return out;
}

void refresh_volume_stats(Trajectory& traj) {
  if (traj.samples.empty()) {
    traj.initial_volume = 0.0;
    traj.volume_drift = 0.0;
    return;
  }
  const double v0 = traj.samples.front().state.volume();
  double drift = 0.0;
  for (const auto& sample : traj.samples)
    drift = std::max(drift, std::abs(sample.state.volume() / v0 - 1.0));
  traj.initial_volume = v0;
  traj.volume_drift = drift;
}

}  // namespace brf
