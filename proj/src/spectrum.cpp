#include "brf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "brf/flow.hpp"
#include "brf/geometry.hpp"

namespace brf {

namespace {

double envelope_lower_rate(const CurvatureData& c) {
  return 2.0 / 3.0 * c.scalar - 2.0 * c.max_component();
}

double envelope_upper_rate(const CurvatureData& c) {
  return 2.0 / 3.0 * c.scalar - 2.0 * c.min_component();
}

// Quintic two-point Hermite interpolant of the metric coefficients inside
// one grid interval: values, first and second time derivatives match the
// flow at both endpoints. Falls back to geometric interpolation if the
// polynomial dips non-positive.
struct StateInterpolant {
  BianchiClass cls;
  MetricState s0, s1;
  double h;
  std::array<double, 6> poly[3];  // coefficients in theta = (t - t0)/h

  StateInterpolant(BianchiClass cls_in, const MetricState& begin,
                   const MetricState& end)
      : cls(cls_in), s0(begin), s1(end), h(end.t - begin.t) {
    const auto f0 = flow_rhs(cls, s0);
    const auto f1 = flow_rhs(cls, s1);
    const auto g0 = flow_acceleration(cls, s0);
    const auto g1 = flow_acceleration(cls, s1);
    const double y0[3] = {s0.a, s0.b, s0.c};
    const double y1[3] = {s1.a, s1.b, s1.c};
    for (int i = 0; i < 3; ++i) {
      const double d0 = h * f0[i], d1 = h * f1[i];
      const double q0 = h * h * g0[i], q1 = h * h * g1[i];
      const double r0 = y1[i] - y0[i] - d0 - 0.5 * q0;
      const double r1 = d1 - d0 - q0;
      const double r2 = q1 - q0;
      poly[i] = {y0[i],
                 d0,
                 0.5 * q0,
                 10.0 * r0 - 4.0 * r1 + 0.5 * r2,
                 7.0 * r1 - 15.0 * r0 - r2,
                 0.5 * r2 - 3.0 * r1 + 6.0 * r0};
    }
  }

  MetricState at(double theta) const {
    MetricState out;
    out.t = s0.t + theta * h;
    double y[3];
    for (int i = 0; i < 3; ++i) {
      const auto& p = poly[i];
      y[i] = p[0] +
             theta * (p[1] +
                      theta * (p[2] +
                               theta * (p[3] + theta * (p[4] + theta * p[5]))));
      if (!(y[i] > 0.0)) {
        const double lo = i == 0 ? s0.a : i == 1 ? s0.b : s0.c;
        const double hi = i == 0 ? s1.a : i == 1 ? s1.b : s1.c;
        y[i] = std::pow(lo, 1.0 - theta) * std::pow(hi, theta);
      }
    }
    out.a = y[0];
    out.b = y[1];
    out.c = y[2];
    return out;
  }
};

using RateFn = std::function<double(const CurvatureData&)>;

double simpson(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Integral of rate(curvature(state(t))) over one piece of a grid interval,
// parameterized by theta in [theta0, theta1].
double interval_integral(BianchiClass cls, const MetricState& s0,
                         const MetricState& s1, const RateFn& rate,
                         double theta0, double theta1, double tol) {
  const double h = s1.t - s0.t;
  const StateInterpolant interp(cls, s0, s1);
  auto g = [&](double theta) {
    return rate(curvature(cls, interp.at(theta))) * h;
  };
  const double fa = g(theta0), fb = g(theta1);
  const double m = 0.5 * (theta0 + theta1);
  const double fm = g(m);
  const double whole = simpson(fa, fm, fb, theta1 - theta0);
  return adaptive_simpson(g, theta0, theta1, fa, fm, fb, whole, tol, 24);
}

struct GridWindow {
  size_t first_full;   // first grid interval fully to the right of tau
  double theta0;       // start position of tau in interval first_full - 1
  bool tau_on_grid;    // tau coincides with a sample time
  size_t start_index;  // grid index of the sample at/after tau
};

GridWindow locate_tau(const Trajectory& traj, double tau) {
  const auto& samples = traj.samples;
  if (samples.empty()) throw std::invalid_argument("empty trajectory");
  if (!(tau >= traj.t_begin()) || !(tau <= traj.t_end()))
    throw std::invalid_argument("tau lies outside the trajectory time range");
  GridWindow w{};
  auto it = std::lower_bound(
      samples.begin(), samples.end(), tau,
      [](const TrajectorySample& s, double value) { return s.state.t < value; });
  const size_t idx = static_cast<size_t>(it - samples.begin());
  if (it != samples.end() && it->state.t == tau) {
    w.tau_on_grid = true;
    w.first_full = idx;
    w.start_index = idx;
    w.theta0 = 0.0;
  } else {
    w.tau_on_grid = false;
    w.first_full = idx;  // interval (idx-1, idx) contains tau
    w.start_index = idx;
    const auto& s0 = samples[idx - 1].state;
    const auto& s1 = samples[idx].state;
    w.theta0 = (tau - s0.t) / (s1.t - s0.t);
  }
  return w;
}

// Cumulative integral of `rate` along the trajectory from tau, one value per
// emitted envelope time (tau itself first when off-grid).
std::vector<double> cumulative_integral(const Trajectory& traj, double tau,
                                        const RateFn& rate) {
  const GridWindow w = locate_tau(traj, tau);
  const auto& samples = traj.samples;
  const double span = std::max(traj.t_end() - tau,
                               std::numeric_limits<double>::min());
  std::vector<double> acc;
  acc.reserve(samples.size() - w.start_index + 2);
  double total = 0.0;
  acc.push_back(0.0);
  auto tol_for = [&](double width) {
    return std::max(1e-15, 1e-9 * width / span);
  };
  if (!w.tau_on_grid) {
    const auto& s0 = samples[w.first_full - 1].state;
    const auto& s1 = samples[w.first_full].state;
    const double width = s1.t - tau;
    total += interval_integral(traj.cls, s0, s1, rate, w.theta0, 1.0,
                               tol_for(width));
    acc.push_back(total);
  }
  for (size_t k = w.first_full; k + 1 < samples.size(); ++k) {
    const auto& s0 = samples[k].state;
    const auto& s1 = samples[k + 1].state;
    total += interval_integral(traj.cls, s0, s1, rate, 0.0, 1.0,
                               tol_for(s1.t - s0.t));
    acc.push_back(total);
  }
  return acc;
}

std::vector<double> envelope_times(const Trajectory& traj, double tau) {
  const GridWindow w = locate_tau(traj, tau);
  std::vector<double> t;
  if (!w.tau_on_grid) t.push_back(tau);
  for (size_t k = w.start_index; k < traj.samples.size(); ++k)
    t.push_back(traj.samples[k].state.t);
  return t;
}

}  // namespace

double EnvelopePoint::lambda_low() const { return std::exp(log_lambda_low); }
double EnvelopePoint::lambda_high() const { return std::exp(log_lambda_high); }

std::vector<double> MonotoneQuantity::values() const {
  std::vector<double> out(log_values.size());
  std::transform(log_values.begin(), log_values.end(), out.begin(),
                 [](double lv) { return std::exp(lv); });
  return out;
}

std::pair<double, double> envelope_rhs(const CurvatureData& curv,
                                       const EnvelopePoint& point) {
  const double low = point.lambda_low(), high = point.lambda_high();
  if (!(low > 0.0) || !(high > 0.0))
    throw std::invalid_argument("envelope bounds must be positive");
  return {envelope_lower_rate(curv) * low, envelope_upper_rate(curv) * high};
}

std::vector<EnvelopePoint> integrate_envelope(const Trajectory& traj,
                                              double lambda_init, double tau) {
  if (!(lambda_init > 0.0))
    throw std::invalid_argument("lambda_init must be positive");
  const std::vector<double> t = envelope_times(traj, tau);
  const std::vector<double> low =
      cumulative_integral(traj, tau, envelope_lower_rate);
  const std::vector<double> high =
      cumulative_integral(traj, tau, envelope_upper_rate);
  const double log0 = std::log(lambda_init);
  std::vector<EnvelopePoint> out(t.size());
  for (size_t i = 0; i < t.size(); ++i)
    out[i] = {t[i], log0 + low[i], log0 + high[i]};
  return out;
}

MonotoneQuantity monotone_quantity(const Trajectory& traj,
                                   const std::vector<EnvelopePoint>& envelope,
                                   int ricci_index, double tau,
                                   EnvelopeBound bound) {
  if (ricci_index < 1 || ricci_index > 3)
    throw std::invalid_argument("ricci index must be 1, 2 or 3");
  if (envelope.empty() || envelope.front().t != tau)
    throw std::invalid_argument("envelope must start at tau");
  const RateFn weight = [ricci_index](const CurvatureData& c) {
    return -2.0 / 3.0 * c.scalar + 2.0 * c.component(ricci_index);
  };
  const std::vector<double> integral = cumulative_integral(traj, tau, weight);
  if (integral.size() != envelope.size())
    throw std::invalid_argument("envelope grid does not match the trajectory");
  MonotoneQuantity out;
  out.ricci_index = ricci_index;
  out.tau = tau;
  out.bound = bound;
  out.t.resize(envelope.size());
  out.log_values.resize(envelope.size());
  for (size_t i = 0; i < envelope.size(); ++i) {
    out.t[i] = envelope[i].t;
    const double log_lambda = bound == EnvelopeBound::Lower
                                  ? envelope[i].log_lambda_low
                                  : envelope[i].log_lambda_high;
    out.log_values[i] = log_lambda + integral[i];
  }
  return out;
}

std::pair<double, double> heisenberg_bounds_closed_form(double a0, double b0,
                                                        double lambda0,
                                                        double t) {
  if (!(a0 > 0.0) || !(b0 > 0.0) || !(lambda0 > 0.0))
    throw std::invalid_argument("A0, B0 and lambda0 must be positive");
  const double r0 = -0.5 * a0 * a0;
  const double u = 1.0 + 16.0 / 3.0 * r0 * t;
  if (!(u > 0.0))
    throw std::domain_error("time is at or beyond the singular time");
  const double common = std::pow(u, 0.125) * lambda0;
  const double low =
      std::exp(0.75 * a0 * (1.0 - 1.0 / std::sqrt(u))) * common;
  const double high = std::exp(1.5 * b0 * (1.0 - std::pow(u, 0.25))) * common;
  return {low, high};
}

std::pair<double, double> e11_symmetric_bounds(double b0, double lambda0,
                                               double t) {
  if (!(lambda0 > 0.0))
    throw std::invalid_argument("lambda0 must be positive");
  const double t_plus = e11_symmetric_singular_time(b0);
  if (!(t >= 0.0) || !(t < t_plus))
    throw std::domain_error("time must lie in [0, T+) with T+ = (3/32)*B0");
  const double low = lambda0 * std::sqrt((t_plus - t) / t_plus);
  return {low, low * std::exp(16.0 * t)};
}

}  // namespace brf
