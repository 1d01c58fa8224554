#include "brf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "brf/geometry.hpp"

namespace brf {

namespace {

using State3 = std::array<double, 3>;

// Keeps max(X(t+h)/X(t), X(t)/X(t+h)) safely below 1.2 per accepted step.
constexpr double kMaxLogRatioPerStep = 0.1133;

template <typename T>
std::array<T, 3> rhs_impl(BianchiClass cls, const std::array<T, 3>& y) {
  const T a = y[0], b = y[1], c = y[2];
  const double k = 2.0 / 3.0;
  switch (cls) {
    case BianchiClass::Heisenberg:
      return {2.0 * k * a * a * a, -k * a * a * b, -k * a * a * c};
    case BianchiClass::SU2:
      return {-k * a * (-a * (2.0 * a - b - c) + (b - c) * (b - c)),
              -k * b * (-b * (2.0 * b - a - c) + (a - c) * (a - c)),
              -k * c * (-c * (2.0 * c - a - b) + (a - b) * (a - b))};
    case BianchiClass::E11:
      return {k * a * (2.0 * a * a + a * c - c * c),
              -k * b * (a + c) * (a + c),
              k * c * (2.0 * c * c + a * c - a * a)};
    case BianchiClass::E2:
      return {k * a * (2.0 * a + b) * (a - b),
              -k * b * (2.0 * b + a) * (a - b),
              -k * c * (a - b) * (a - b)};
    case BianchiClass::SL2R:
      return {-k * (-a * a * (2.0 * a + b + c) + a * (b - c) * (b - c)),
              -k * (-b * b * (2.0 * b + a - c) + b * (a + c) * (a + c)),
              -k * (-c * c * (2.0 * c + a - b) + c * (a + b) * (a + b))};
  }
  throw std::invalid_argument("unknown Bianchi class");
}

State3 rhs(BianchiClass cls, const State3& y) { return rhs_impl(cls, y); }

bool finite_positive(const State3& y) {
  for (double x : y)
    if (!(x > 0.0) || !std::isfinite(x)) return false;
  return true;
}

double max_relative_rate(const State3& y, const State3& f) {
  double rate = 0.0;
  for (int i = 0; i < 3; ++i) rate = std::max(rate, std::abs(f[i]) / y[i]);
  return rate;
}

// Dormand-Prince 5(4) tableau, FSAL.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // Difference between the 5th and embedded 4th order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

struct StepResult {
  State3 y;
  State3 f_new;  // RHS at the new point (FSAL)
  double error;  // scaled error norm, accept when <= 1
};

StepResult dopri5_step(BianchiClass cls, const State3& y, const State3& k1,
                       double h, double rel_tol, double abs_tol) {
  using T = Dopri5;
  State3 tmp, k2, k3, k4, k5, k6, k7;
  for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * T::a21 * k1[i];
  k2 = rhs(cls, tmp);
  for (int i = 0; i < 3; ++i)
    tmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
  k3 = rhs(cls, tmp);
  for (int i = 0; i < 3; ++i)
    tmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
  k4 = rhs(cls, tmp);
  for (int i = 0; i < 3; ++i)
    tmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] +
                         T::a54 * k4[i]);
  k5 = rhs(cls, tmp);
  for (int i = 0; i < 3; ++i)
    tmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                         T::a64 * k4[i] + T::a65 * k5[i]);
  k6 = rhs(cls, tmp);

  StepResult out;
  for (int i = 0; i < 3; ++i)
    out.y[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] +
                           T::b5 * k5[i] + T::b6 * k6[i]);
  k7 = rhs(cls, out.y);
  out.f_new = k7;

  double err2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double e = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] +
                          T::e5 * k5[i] + T::e6 * k6[i] + T::e7 * k7[i]);
    const double sc =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(out.y[i]));
    err2 += (e / sc) * (e / sc);
  }
  out.error = std::sqrt(err2 / 3.0);
  if (!finite_positive(out.y) || !std::isfinite(out.error))
    out.error = std::numeric_limits<double>::infinity();
  return out;
}

void validate_config(const IntegratorConfig& cfg, const MetricState& initial) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(cfg.min_step > 0.0))
    throw std::invalid_argument("min_step must be positive");
  if (cfg.max_steps <= 0)
    throw std::invalid_argument("max_steps must be positive");
  if (!(cfg.blowup_threshold < 1e100))
    throw std::invalid_argument("blowup_threshold too large");
  const double max0 = std::max({initial.a, initial.b, initial.c});
  if (!(cfg.blowup_threshold > max0))
    throw std::invalid_argument(
        "blowup_threshold must exceed the largest initial coefficient");
  if (cfg.t_max && !std::isfinite(*cfg.t_max))
    throw std::invalid_argument("t_max must be finite");
}

}  // namespace

std::array<double, 3> flow_rhs(BianchiClass cls, const MetricState& state) {
  validate_state(state);
  return rhs(cls, {state.a, state.b, state.c});
}

std::array<double, 3> flow_acceleration(BianchiClass cls,
                                        const MetricState& state) {
  validate_state(state);
  const State3 y = {state.a, state.b, state.c};
  const State3 f = rhs(cls, y);
  // Second time derivative J(y)*f(y) by a complex directional step; exact to
  // machine precision for the polynomial right-hand sides.
  constexpr double eps = 1e-100;
  const std::array<std::complex<double>, 3> yc = {
      std::complex<double>(y[0], eps * f[0]),
      std::complex<double>(y[1], eps * f[1]),
      std::complex<double>(y[2], eps * f[2])};
  const auto fc = rhs_impl(cls, yc);
  return {fc[0].imag() / eps, fc[1].imag() / eps, fc[2].imag() / eps};
}

Trajectory integrate(BianchiClass cls, const MetricState& initial,
                     const IntegratorConfig& config) {
  validate_state(initial);
  validate_config(config, initial);

  Trajectory traj;
  traj.cls = cls;
  traj.rel_tol = config.rel_tol;
  traj.abs_tol = config.abs_tol;

  double t = initial.t;
  State3 y = {initial.a, initial.b, initial.c};
  const double t_horizon =
      config.t_max ? initial.t + *config.t_max
                   : std::numeric_limits<double>::infinity();

  auto emit = [&](double tt, const State3& yy) {
    MetricState s{tt, yy[0], yy[1], yy[2]};
    traj.samples.push_back({s, curvature(cls, s)});
  };
  emit(t, y);

  auto finish = [&](StopReason reason) {
    traj.stop_reason = reason;
    refresh_volume_stats(traj);
    return traj;
  };

  if (t >= t_horizon) return finish(StopReason::HorizonReached);

  State3 f = rhs(cls, y);
  const double rate0 = max_relative_rate(y, f);
  // Horizon-bounded runs keep at least ~64 samples so that trailing-decade
  // fits stay well posed even at fixed points.
  const double horizon_cap =
      config.t_max ? std::max((t_horizon - t) / 64.0, config.min_step)
                   : std::numeric_limits<double>::infinity();
  double h = rate0 > 0.0 ? 0.01 / rate0 : 0.1;
  h = std::min({h, horizon_cap, t_horizon - t});

  long steps = 0;
  while (true) {
    if (steps >= config.max_steps) return finish(StopReason::StepBudget);

    // Density cap: bound the per-step relative change of every coefficient.
    const double rate = max_relative_rate(y, f);
    if (rate > 0.0) h = std::min(h, kMaxLogRatioPerStep / rate);
    h = std::min(h, horizon_cap);
    // Land exactly on the horizon, absorbing any sliver that would otherwise
    // be left over as a sub-min_step step.
    bool final_step = false;
    if (t_horizon - t <= 1.01 * h) {
      h = t_horizon - t;
      final_step = true;
    }
    if (h < config.min_step || t + h <= t)
      return finish(StopReason::StepUnderflow);

    const StepResult step =
        dopri5_step(cls, y, f, h, config.rel_tol, config.abs_tol);
    ++steps;
    traj.steps_taken = steps;

    if (step.error > 1.0) {
      const double shrink = std::isfinite(step.error)
                                ? std::max(0.2, 0.9 * std::pow(step.error, -0.2))
                                : 0.2;
      h *= shrink;
      continue;
    }

    t = final_step ? t_horizon : t + h;
    y = step.y;
    f = step.f_new;
    emit(t, y);

    if (*std::max_element(y.begin(), y.end()) >= config.blowup_threshold)
      return finish(StopReason::BlowupDetected);
    if (final_step) return finish(StopReason::HorizonReached);

    const double grow =
        std::clamp(0.9 * std::pow(std::max(step.error, 1e-10), -0.2), 0.2, 5.0);
    h *= grow;
  }
}

double heisenberg_singular_time(double a0) {
  if (!(a0 > 0.0)) throw std::invalid_argument("A0 must be positive");
  return 3.0 / (8.0 * a0 * a0);
}

double e11_symmetric_singular_time(double b0) {
  if (!(b0 > 0.0)) throw std::invalid_argument("B0 must be positive");
  return 3.0 / 32.0 * b0;
}

MetricState closed_form_heisenberg(const MetricState& initial, double t) {
  validate_state(initial);
  const double dt = t - initial.t;
  const double r0 = -0.5 * initial.a * initial.a;
  const double u = 1.0 + 16.0 / 3.0 * r0 * dt;
  if (!(u > 0.0))
    throw std::domain_error(
        "time is at or beyond the singular time of the Heisenberg solution");
  return MetricState{t, initial.a * std::pow(u, -0.5),
                     initial.b * std::pow(u, 0.25),
                     initial.c * std::pow(u, 0.25)};
}

MetricState closed_form_e11_symmetric(double b0, double t) {
  const double t_plus = e11_symmetric_singular_time(b0);
  if (!(t >= 0.0) || !(t < t_plus))
    throw std::domain_error("time must lie in [0, T+) with T+ = (3/32)*B0");
  const double remaining = t_plus - t;
  const double ac = std::sqrt(6.0) / 4.0 / std::sqrt(remaining);
  return MetricState{t, ac, 32.0 / 3.0 * remaining, ac};
}

}  // namespace brf
