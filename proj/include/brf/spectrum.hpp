#pragma once

#include <utility>
#include <vector>

#include "brf/types.hpp"

namespace brf {

/// Two-sided bound on the first eigenvalue of -Laplace at time t. Values are
/// carried in log space; the lower bound can underflow double range near a
/// singular time while its log stays representable.
struct EnvelopePoint {
  double t = 0.0;
  double log_lambda_low = 0.0;
  double log_lambda_high = 0.0;

  double lambda_low() const;
  double lambda_high() const;
};

enum class EnvelopeBound { Lower, Upper };

/// lambda_bound(t) * exp(Integral_tau^t (-(2/3)R + 2*R_ii) ds) sampled on the
/// envelope grid, in log space. Monotone after the regime time when the
/// matching curvature ordering holds.
struct MonotoneQuantity {
  int ricci_index = 1;  // which Ricci component enters the exponent
  double tau = 0.0;
  EnvelopeBound bound = EnvelopeBound::Lower;
  std::vector<double> t;
  std::vector<double> log_values;

  std::vector<double> values() const;
};

/// Growth rates of the two envelope bounds:
///   d(lambda_low)/dt  = ((2/3)R - 2*max(R11,R22,R33)) * lambda_low
///   d(lambda_high)/dt = ((2/3)R - 2*min(R11,R22,R33)) * lambda_high.
std::pair<double, double> envelope_rhs(const CurvatureData& curv,
                                       const EnvelopePoint& point);

/// Integrates both envelope bounds from lambda_init at t = tau along the
/// trajectory, emitting one point per trajectory sample with t >= tau (plus
/// the starting point at tau itself when tau falls between samples).
/// Curvature between samples is evaluated on cubic-Hermite interpolated
/// states; each grid interval is integrated by adaptive quadrature.
std::vector<EnvelopePoint> integrate_envelope(const Trajectory& traj,
                                              double lambda_init, double tau);

/// The exponentially weighted quantity for one Ricci index, computed with the
/// same quadrature machinery as the envelope and aligned with its grid.
MonotoneQuantity monotone_quantity(const Trajectory& traj,
                                   const std::vector<EnvelopePoint>& envelope,
                                   int ricci_index, double tau,
                                   EnvelopeBound bound);

/// Closed-form Heisenberg envelope bounds at time t (hypothesis B0 >= C0):
///   low  = lambda0 * exp((3*A0/4)*(1 - u^(-1/2))) * u^(1/8)
///   high = lambda0 * exp((3*B0/2)*(1 - u^(1/4)))  * u^(1/8)
/// with u = 1 + (16/3)*R0*t and R0 = -A0^2/2.
std::pair<double, double> heisenberg_bounds_closed_form(double a0, double b0,
                                                        double lambda0,
                                                        double t);

/// Closed-form bounds for the symmetric E(1,1) solution:
///   low = lambda0 * ((T+ - t)/T+)^(1/2), high = low * exp(16*t),
/// with T+ = (3/32)*B0.
std::pair<double, double> e11_symmetric_bounds(double b0, double lambda0,
                                               double t);

}  // namespace brf
