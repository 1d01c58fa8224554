#include "brf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "brf/geometry.hpp"

namespace brf {

namespace {

using nlohmann::json;

constexpr char kTrajectoryHeader[] = "t,A,B,C,R11,R22,R33,R";
constexpr double kFixedPointTolerance = 1e-9;

void append_number(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

std::vector<double> parse_row(const std::string& line, size_t expected,
                              size_t line_no) {
  std::vector<double> out;
  out.reserve(expected);
  size_t pos = 0;
  while (pos <= line.size()) {
    size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const char* begin = line.data() + pos;
    const char* end = line.data() + comma;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
      throw std::invalid_argument("bad number in CSV line " +
                                  std::to_string(line_no));
    out.push_back(v);
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  if (out.size() != expected)
    throw std::invalid_argument("wrong column count in CSV line " +
                                std::to_string(line_no));
  return out;
}

RicciPattern pattern(std::array<int, 3> signs, std::array<int, 3> order) {
  RicciPattern p;
  p.signs = signs;
  p.order = order;
  return p;
}

// Candidate regime patterns per class, in detection order. For SL(2,R) the
// pattern follows the classification instead.
std::vector<RicciPattern> tau_candidates(BianchiClass cls) {
  switch (cls) {
    case BianchiClass::Heisenberg:
      return {pattern({1, -1, -1}, {1, 3, 2}), pattern({1, -1, -1}, {1, 2, 3})};
    case BianchiClass::SU2:
      return {pattern({1, -1, -1}, {1, 3, 2}), pattern({1, 1, 1}, {1, 2, 3})};
    case BianchiClass::E11:
      return {pattern({1, -1, -1}, {1, 2, 3}), pattern({1, -1, -1}, {1, 3, 2}),
              pattern({0, -1, 0}, {1, 3, 2})};
    case BianchiClass::E2:
      return {pattern({1, -1, -1}, {1, 2, 3}), pattern({1, -1, -1}, {1, 3, 2}),
              pattern({0, 0, 0}, {1, 2, 3})};
    case BianchiClass::SL2R:
      return {};
  }
  return {};
}

RicciPattern sl2r_pattern(SL2RCaseTag tag) {
  switch (tag) {
    case SL2RCaseTag::Case1ADominates:
      return pattern({1, -1, -1}, {1, 3, 2});
    case SL2RCaseTag::Case2BDominates:
      return pattern({-1, 1, -1}, {2, 3, 1});
    case SL2RCaseTag::Case3Balanced:
      return pattern({1, -1, -1}, {1, 2, 3});
  }
  return {};
}

json fit_to_json(const std::optional<ExponentFit>& fit) {
  if (!fit) return nullptr;
  return json{{"p", fit->exponent},
              {"eta", fit->prefactor},
              {"residual", fit->residual}};
}

}  // namespace

std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  for (const auto& sample : traj.samples) {
    const MetricState& s = sample.state;
    const CurvatureData& c = sample.curvature;
    const double row[8] = {s.t,   s.a,   s.b,   s.c,
                           c.r11, c.r22, c.r33, c.scalar};
    for (int i = 0; i < 8; ++i) {
      if (i) out += ',';
      append_number(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

Trajectory trajectory_from_csv(BianchiClass cls, const std::string& csv,
                               StopReason stop_reason) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader)
    throw std::invalid_argument("missing or unexpected trajectory CSV header");
  Trajectory traj;
  traj.cls = cls;
  traj.stop_reason = stop_reason;
  traj.rel_tol = std::numeric_limits<double>::quiet_NaN();
  traj.abs_tol = std::numeric_limits<double>::quiet_NaN();
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<double> row = parse_row(line, 8, line_no);
    TrajectorySample sample;
    sample.state = MetricState{row[0], row[1], row[2], row[3]};
    sample.curvature = CurvatureData{row[4], row[5], row[6], row[7]};
    if (!traj.samples.empty() &&
        !(sample.state.t > traj.samples.back().state.t))
      throw std::invalid_argument("CSV sample times must strictly increase");
    traj.samples.push_back(sample);
  }
  if (traj.samples.empty())
    throw std::invalid_argument("trajectory CSV contains no samples");
  refresh_volume_stats(traj);
  return traj;
}

std::string envelope_to_csv(const std::vector<EnvelopePoint>& envelope,
                            const std::vector<MonotoneQuantity>& monotone) {
  for (const auto& m : monotone)
    if (m.t.size() != envelope.size())
      throw std::invalid_argument("monotone series does not match envelope");
  std::string out = "t,lambda_low,lambda_high";
  for (const auto& m : monotone) {
    out += ",m" + std::to_string(m.ricci_index);
    out += m.bound == EnvelopeBound::Lower ? "_low" : "_high";
  }
  out += '\n';
  for (size_t i = 0; i < envelope.size(); ++i) {
    append_number(out, envelope[i].t);
    out += ',';
    append_number(out, envelope[i].lambda_low());
    out += ',';
    append_number(out, envelope[i].lambda_high());
    for (const auto& m : monotone) {
      out += ',';
      append_number(out, std::exp(m.log_values[i]));
    }
    out += '\n';
  }
  return out;
}

RunAnalysis analyze_trajectory(const Trajectory& traj) {
  RunAnalysis out;
  const MetricState& first = traj.initial_state();

  double deviation = 0.0;
  for (const auto& sample : traj.samples)
    for (int i = 1; i <= 3; ++i)
      deviation = std::max(
          deviation, std::abs(sample.state.coefficient(i) /
                                  first.coefficient(i) -
                              1.0));
  out.fixed_point = deviation <= kFixedPointTolerance;

  const bool singular = traj.stop_reason == StopReason::BlowupDetected ||
                        traj.stop_reason == StopReason::StepUnderflow;
  double fit_abscissa = std::numeric_limits<double>::infinity();
  if (singular) {
    try {
      out.t_plus = estimate_blowup_time(traj);
      fit_abscissa = *out.t_plus;
    } catch (const std::invalid_argument&) {
      out.t_plus = std::nullopt;
    }
  }
  const size_t n = traj.samples.size();
  std::vector<double> t(n);
  for (size_t i = 0; i < n; ++i) t[i] = traj.samples[i].state.t;
  const char* names[3] = {"A", "B", "C"};
  for (int index = 1; index <= 3; ++index) {
    std::optional<ExponentFit> fit;
    try {
      std::vector<double> v(n);
      for (size_t i = 0; i < n; ++i)
        v[i] = traj.samples[i].state.coefficient(index);
      fit = fit_exponent(t, v, fit_abscissa);
    } catch (const std::invalid_argument&) {
      fit = std::nullopt;
    }
    out.exponents.emplace_back(names[index - 1], fit);
  }

  if (traj.cls == BianchiClass::SL2R) {
    if (first.b >= first.c) {
      out.sl2r = classify_sl2r_trajectory(traj);
      out.tau = detect_tau(traj, sl2r_pattern(out.sl2r->tag));
    }
  } else {
    for (const RicciPattern& p : tau_candidates(traj.cls)) {
      out.tau = detect_tau(traj, p);
      if (out.tau) break;
    }
  }
  return out;
}

std::string report_json(const Trajectory& traj, double lambda0,
                        const RunAnalysis& analysis) {
  const MetricState& first = traj.initial_state();
  json exponents;
  for (const auto& [name, fit] : analysis.exponents)
    exponents[name] = fit_to_json(fit);
  json report{
      {"class", std::string(class_name(traj.cls))},
      {"initial",
       {{"A0", first.a}, {"B0", first.b}, {"C0", first.c},
        {"lambda0", lambda0}}},
      {"stop_reason", std::string(stop_reason_name(traj.stop_reason))},
      {"t_final", traj.t_end()},
      {"n_samples", traj.samples.size()},
      {"volume_drift", traj.volume_drift},
      {"T_plus", analysis.t_plus ? json(*analysis.t_plus) : json(nullptr)},
      {"exponents", exponents},
      {"tau", analysis.tau ? json(*analysis.tau) : json(nullptr)},
      {"fixed_point", analysis.fixed_point},
  };
  if (analysis.sl2r) {
    report["sl2r_case"] = std::string(sl2r_case_name(analysis.sl2r->tag));
    if (analysis.sl2r->witness_time)
      report["sl2r_witness_time"] = *analysis.sl2r->witness_time;
    else
      report["sl2r_certified_until"] = analysis.sl2r->certification_horizon;
    if (analysis.sl2r->c_law)
      report["sl2r_c_law"] = fit_to_json(analysis.sl2r->c_law);
  }
  return report.dump(2);
}

}  // namespace brf
