#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace brf {

/// The five unimodular Lie group geometries that admit a Milnor frame in
/// which a diagonal metric stays diagonal under the flow.
enum class BianchiClass { Heisenberg, SU2, E11, E2, SL2R };

inline constexpr std::array<BianchiClass, 5> kAllClasses = {
    BianchiClass::Heisenberg, BianchiClass::SU2, BianchiClass::E11,
    BianchiClass::E2, BianchiClass::SL2R};

std::string_view class_name(BianchiClass cls);
std::optional<BianchiClass> class_from_name(std::string_view name);

/// Signed bracket coefficients of the Milnor frame:
///   [f2,f3] = 2*l1*f1,  [f3,f1] = 2*l2*f2,  [f1,f2] = 2*l3*f3,
/// each in {-1, 0, 1}.
struct StructureConstants {
  int l1 = 0;
  int l2 = 0;
  int l3 = 0;
};

/// Diagonal metric g = A f^1⊗f^1 + B f^2⊗f^2 + C f^3⊗f^3 at flow time t.
/// Coefficients must be strictly positive; the conventional normalization
/// is A*B*C = 4 but it is not enforced.
struct MetricState {
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double volume() const { return a * b * c; }
  double coefficient(int index) const;  // 1-based, 1 = A
};

/// Diagonal Ricci tensor components in the Milnor frame and the scalar
/// curvature of the corresponding metric.
struct CurvatureData {
  double r11 = 0.0;
  double r22 = 0.0;
  double r33 = 0.0;
  double scalar = 0.0;

  double component(int ricci_index) const;  // 1-based
  double max_component() const;
  double min_component() const;
};

enum class StopReason {
  HorizonReached,
  BlowupDetected,
  StepUnderflow,
  StepBudget,
};

std::string_view stop_reason_name(StopReason reason);
std::optional<StopReason> stop_reason_from_name(std::string_view name);

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_steps = 2000000;
  double blowup_threshold = 1e8;
  double min_step = 1e-14;
  std::optional<double> t_max{};  // absent: run until a singular stop
};

struct TrajectorySample {
  MetricState state;
  CurvatureData curvature;
};

/// Time-ordered solution curve of one backward-flow run. Samples are
/// strictly increasing in t and the first sample is the initial condition.
/// Immutable once produced; safe to share across threads.
struct Trajectory {
  BianchiClass cls = BianchiClass::Heisenberg;
  std::vector<TrajectorySample> samples;
  StopReason stop_reason = StopReason::HorizonReached;
  double volume_drift = 0.0;    // max_t |A*B*C / (A0*B0*C0) - 1|
  double initial_volume = 0.0;  // A0*B0*C0
  // Integration metadata; NaN for trajectories rebuilt from stored samples.
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  long steps_taken = 0;

  const MetricState& initial_state() const { return samples.front().state; }
  const MetricState& final_state() const { return samples.back().state; }
  double t_begin() const { return samples.front().state.t; }
  double t_end() const { return samples.back().state.t; }
};

/// Recomputes volume_drift and initial_volume from the stored samples.
void refresh_volume_stats(Trajectory& traj);

}  // namespace brf
