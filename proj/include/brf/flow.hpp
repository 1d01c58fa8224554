#pragma once

#include <array>

#include "brf/types.hpp"

namespace brf {

/// Right-hand side (dA/dt, dB/dt, dC/dt) of the normalized backward flow.
/// Equals componentwise 2*R_XX - (2/3)*R*X for the curvature of the state,
/// so A*B*C is conserved along exact solutions.
std::array<double, 3> flow_rhs(BianchiClass cls, const MetricState& state);

/// Second time derivative (d2A/dt2, d2B/dt2, d2C/dt2) along the flow,
/// evaluated as the directional derivative of the right-hand side.
std::array<double, 3> flow_acceleration(BianchiClass cls,
                                        const MetricState& state);

/// Integrates the backward flow from `initial` with an adaptive embedded
/// Dormand-Prince 5(4) pair. Every accepted step is emitted as a sample and
/// the step size is capped so that consecutive coefficient ratios stay below
/// 1.2. Stops at the horizon, when a coefficient reaches
/// config.blowup_threshold, when the required step falls below
/// config.min_step, or when the step budget is exhausted.
Trajectory integrate(BianchiClass cls, const MetricState& initial,
                     const IntegratorConfig& config);

/// Exact Heisenberg solution at flow time t (elapsed time t - initial.t):
///   A = A0*(1 + (16/3)*R0*dt)^(-1/2), B = B0*(...)^(1/4), C = C0*(...)^(1/4)
/// with R0 = -A0^2/2. Throws std::domain_error at or past the singular time
/// initial.t + 3/(8*A0^2).
MetricState closed_form_heisenberg(const MetricState& initial, double t);

/// Exact solution of the A0 = C0 case of E(1,1) under A0^2*B0 = 4:
///   A = C = (sqrt(6)/4)*(T+ - t)^(-1/2), B = (32/3)*(T+ - t),
/// with T+ = (3/32)*B0. Throws std::domain_error for t outside [0, T+).
MetricState closed_form_e11_symmetric(double b0, double t);

/// Singular time of the Heisenberg closed form measured from t = 0.
double heisenberg_singular_time(double a0);

/// Singular time (3/32)*B0 of the symmetric E(1,1) solution.
double e11_symmetric_singular_time(double b0);

}  // namespace brf
