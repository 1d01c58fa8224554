#include "brf/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brf/flow.hpp"
#include "brf/geometry.hpp"

namespace brf {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit least_squares_line(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0.0, sy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("degenerate fit abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

void require_blowup_stop(const Trajectory& traj) {
  if (traj.stop_reason != StopReason::BlowupDetected &&
      traj.stop_reason != StopReason::StepUnderflow)
    throw std::invalid_argument(
        "trajectory did not stop at a singular time (stop_reason = " +
        std::string(stop_reason_name(traj.stop_reason)) + ")");
}

int largest_final_coefficient(const Trajectory& traj) {
  const MetricState& last = traj.final_state();
  int index = 1;
  double best = last.a;
  if (last.b > best) {
    best = last.b;
    index = 2;
  }
  if (last.c > best) index = 3;
  return index;
}

// Samples over the final decade of the blowing-up coefficient's growth:
// from 10% of its final magnitude to the end.
size_t growth_window_begin(const Trajectory& traj, int index) {
  const double final_value = traj.final_state().coefficient(index);
  const double cutoff = 0.1 * final_value;
  size_t begin = traj.samples.size();
  while (begin > 0 &&
         traj.samples[begin - 1].state.coefficient(index) >= cutoff)
    --begin;
  return begin;
}

bool sample_matches(const CurvatureData& c, const RicciPattern& p) {
  for (int i = 0; i < 3; ++i) {
    const double r = c.component(i + 1);
    if (p.signs[i] > 0 && !(r > 0.0)) return false;
    if (p.signs[i] < 0 && !(r < 0.0)) return false;
  }
  return c.component(p.order[0]) >= c.component(p.order[1]) &&
         c.component(p.order[1]) >= c.component(p.order[2]);
}

}  // namespace

std::string_view sl2r_case_name(SL2RCaseTag tag) {
  switch (tag) {
    case SL2RCaseTag::Case1ADominates: return "case1_a_dominates";
    case SL2RCaseTag::Case2BDominates: return "case2_b_dominates";
    case SL2RCaseTag::Case3Balanced: return "case3_balanced";
  }
  return "unknown";
}

double estimate_blowup_time(const Trajectory& traj) {
  require_blowup_stop(traj);
  const int index = largest_final_coefficient(traj);
  const size_t begin = growth_window_begin(traj, index);
  const size_t n = traj.samples.size() - begin;
  if (n < 3)
    throw std::invalid_argument("too few samples in the blow-up window");
  std::vector<double> t(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    const MetricState& s = traj.samples[begin + i].state;
    const double x = s.coefficient(index);
    t[i] = s.t;
    y[i] = 1.0 / (x * x);
  }
  const LineFit fit = least_squares_line(t, y);
  if (!(fit.slope < 0.0))
    throw std::invalid_argument("coefficient is not blowing up");
  const double t_plus = -fit.intercept / fit.slope;
  if (!(t_plus > traj.t_end()))
    throw std::invalid_argument(
        "blow-up fit does not extrapolate beyond the data");
  return t_plus;
}

ExponentFit fit_exponent(const std::vector<double>& t,
                         const std::vector<double>& value, double t_plus) {
  if (t.size() != value.size())
    throw std::invalid_argument("mismatched series lengths");
  if (t.empty()) throw std::invalid_argument("empty series");
  const bool horizon_mode = std::isinf(t_plus);
  if (!horizon_mode && !(t_plus > t.back()))
    throw std::invalid_argument("t_plus must lie beyond the last sample");

  // Last decade of the abscissa: time-to-singularity when t_plus is finite,
  // plain time otherwise.
  std::vector<double> x, y;
  for (size_t i = 0; i < t.size(); ++i) {
    const double w = horizon_mode ? t[i] : t_plus - t[i];
    if (!(w > 0.0)) continue;
    const bool inside = horizon_mode ? w >= 0.1 * t.back()
                                     : w <= 10.0 * (t_plus - t.back());
    if (!inside) continue;
    if (!(value[i] > 0.0))
      throw std::invalid_argument("series values must be positive");
    x.push_back(std::log(w));
    y.push_back(std::log(value[i]));
  }
  if (x.size() < 10)
    throw std::invalid_argument("fewer than 10 points in the fit window");

  // A constant series has zero slope regardless of abscissa conditioning.
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  ExponentFit out;
  if (*ymax - *ymin <= 1e-14 * std::max(1.0, std::abs(*ymax))) {
    out.exponent = 0.0;
    out.prefactor = std::exp((*ymax + *ymin) / 2.0);
    out.residual = (*ymax - *ymin) / 2.0;
    return out;
  }

  const LineFit fit = least_squares_line(x, y);
  out.exponent = fit.slope;
  out.prefactor = std::exp(fit.intercept);
  double res = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    res = std::max(res, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  out.residual = res;
  return out;
}

SingularityReport singularity_report(const Trajectory& traj) {
  SingularityReport report;
  report.t_plus = estimate_blowup_time(traj);
  report.blowup_index = largest_final_coefficient(traj);
  const size_t begin = growth_window_begin(traj, report.blowup_index);
  report.fit_window_begin = traj.samples[begin].state.t;
  report.fit_window_end = traj.t_end();

  const size_t n = traj.samples.size();
  std::vector<double> t(n);
  for (size_t i = 0; i < n; ++i) t[i] = traj.samples[i].state.t;
  const char* names[3] = {"A", "B", "C"};
  double worst = 0.0;
  for (int index = 1; index <= 3; ++index) {
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i)
      v[i] = traj.samples[i].state.coefficient(index);
    const ExponentFit fit = fit_exponent(t, v, report.t_plus);
    worst = std::max(worst, fit.residual);
    report.exponents[names[index - 1]] = fit;
  }
  report.residual = worst;
  return report;
}

std::optional<double> detect_tau(const Trajectory& traj,
                                 const RicciPattern& pattern) {
  for (int i : pattern.signs)
    if (i < -1 || i > 1) throw std::invalid_argument("signs must be -1, 0 or 1");
  std::array<bool, 3> seen{false, false, false};
  for (int i : pattern.order) {
    if (i < 1 || i > 3) throw std::invalid_argument("order must permute 1..3");
    seen[i - 1] = true;
  }
  if (!(seen[0] && seen[1] && seen[2]))
    throw std::invalid_argument("order must permute 1..3");

  // The pattern must persist to the end of the trajectory, so scan backwards
  // for the longest matching suffix.
  const auto& samples = traj.samples;
  size_t first_bad = samples.size();
  for (size_t i = samples.size(); i > 0; --i) {
    if (!sample_matches(samples[i - 1].curvature, pattern)) break;
    first_bad = i - 1;
  }
  if (first_bad == samples.size()) return std::nullopt;
  return samples[first_bad].state.t;
}

SL2RCase classify_sl2r_trajectory(const Trajectory& traj) {
  if (traj.cls != BianchiClass::SL2R)
    throw std::invalid_argument("classification applies to SL(2,R) only");
  const MetricState& first = traj.initial_state();
  if (!(first.b >= first.c))
    throw std::invalid_argument("classification assumes B0 >= C0");

  SL2RCase out;
  for (const auto& sample : traj.samples) {
    const MetricState& s = sample.state;
    if (s.a >= s.b) {
      out.tag = SL2RCaseTag::Case1ADominates;
      out.witness_time = s.t;
      return out;
    }
    if (s.a <= s.b - s.c) {
      out.tag = SL2RCaseTag::Case2BDominates;
      out.witness_time = s.t;
      return out;
    }
  }
  out.tag = SL2RCaseTag::Case3Balanced;
  out.certification_horizon = traj.t_end();
  if (traj.stop_reason == StopReason::BlowupDetected ||
      traj.stop_reason == StopReason::StepUnderflow) {
    out.t_plus = estimate_blowup_time(traj);
    std::vector<double> t, c;
    t.reserve(traj.samples.size());
    c.reserve(traj.samples.size());
    for (const auto& sample : traj.samples) {
      t.push_back(sample.state.t);
      c.push_back(sample.state.c);
    }
    out.c_law = fit_exponent(t, c, *out.t_plus);
  }
  return out;
}

SL2RCase classify_sl2r(const MetricState& initial,
                       const IntegratorConfig& config) {
  if (!(initial.b >= initial.c))
    throw std::invalid_argument("classification assumes B0 >= C0");
  const Trajectory traj = integrate(BianchiClass::SL2R, initial, config);
  return classify_sl2r_trajectory(traj);
}

std::array<double, 3> subriemannian_limit(const Trajectory& traj) {
  require_blowup_stop(traj);
  const MetricState& first = traj.initial_state();
  const MetricState& last = traj.final_state();

  // Vanishing: dropped well below the initial value. Blowing: grew well
  // above it.
  std::array<bool, 3> vanishing{}, blowing{};
  int scale_index = 0;
  double scale_final = -1.0;
  for (int i = 1; i <= 3; ++i) {
    const double x0 = first.coefficient(i), x1 = last.coefficient(i);
    vanishing[i - 1] = x1 < 0.1 * x0;
    blowing[i - 1] = x1 > 10.0 * x0;
    if (vanishing[i - 1] && x1 >= scale_final) {
      scale_final = x1;
      scale_index = i;
    }
  }
  if (scale_index == 0)
    throw std::invalid_argument(
        "no vanishing coefficient; the trajectory has no rescaling limit");

  const double s0 = first.coefficient(scale_index);
  // Dual components of (s0/s(t)) * g(t), averaged over the trailing samples;
  // ratios of same-rate coefficients have converged there.
  const size_t n = traj.samples.size();
  const size_t tail = std::min<size_t>(5, n);
  std::array<double, 3> dual{0.0, 0.0, 0.0};
  for (size_t k = n - tail; k < n; ++k) {
    const MetricState& s = traj.samples[k].state;
    const double scale = s.coefficient(scale_index);
    for (int i = 1; i <= 3; ++i)
      dual[i - 1] += scale / (s0 * s.coefficient(i)) / tail;
  }
  for (int i = 0; i < 3; ++i)
    if (blowing[i]) dual[i] = 0.0;  // extrapolated limit of the dual component
  return dual;
}

}  // namespace brf
