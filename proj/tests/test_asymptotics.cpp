#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "brf/asymptotics.hpp"
#include "brf/flow.hpp"
#include "brf/geometry.hpp"

using namespace brf;

namespace {

MetricState state(double a, double b, double c) { return {0.0, a, b, c}; }

// Synthetic blow-up trajectory with exact power laws
//   A = (T+ - t)^(-1/2), B = etaB*(T+ - t)^(1/4), C = etaC*(T+ - t)
// sampled down to T+ - t = 10^(-decades).
Trajectory synthetic_blowup(double t_plus, double eta_b, double eta_c,
                            double decades, int n) {
  Trajectory traj;
  traj.cls = BianchiClass::Heisenberg;
  traj.stop_reason = StopReason::BlowupDetected;
  for (int i = 0; i < n; ++i) {
    const double w = t_plus * std::pow(10.0, -decades * i / (n - 1));
    TrajectorySample sample;
    sample.state = MetricState{t_plus - w, 1.0 / std::sqrt(w),
                               eta_b * std::pow(w, 0.25), eta_c * w};
    traj.samples.push_back(sample);
  }
  refresh_volume_stats(traj);
  return traj;
}

RicciPattern pattern(std::array<int, 3> signs, std::array<int, 3> order) {
  RicciPattern p;
  p.signs = signs;
  p.order = order;
  return p;
}

}  // namespace

TEST_CASE("blow-up time recovery on exact synthetic data") {
  const Trajectory synth = synthetic_blowup(1.0, 2.5, 10.0, 2.0, 400);
  const double t_plus = estimate_blowup_time(synth);
  CHECK(t_plus == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exponent fits on exact synthetic data") {
  const Trajectory synth = synthetic_blowup(1.0, 2.5, 32.0 / 3.0, 2.0, 400);
  std::vector<double> t, a, b, c;
  for (const auto& sample : synth.samples) {
    t.push_back(sample.state.t);
    a.push_back(sample.state.a);
    b.push_back(sample.state.b);
    c.push_back(sample.state.c);
  }
  SUBCASE("inverse square root") {
    const ExponentFit fit = fit_exponent(t, a, 1.0);
    CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(fit.prefactor == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.residual < 1e-9);
  }
  SUBCASE("quarter power") {
    const ExponentFit fit = fit_exponent(t, b, 1.0);
    CHECK(fit.exponent == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(fit.prefactor == doctest::Approx(2.5).epsilon(1e-6));
  }
  SUBCASE("linear law") {
    const ExponentFit fit = fit_exponent(t, c, 1.0);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.prefactor == doctest::Approx(32.0 / 3.0).epsilon(1e-6));
  }
  SUBCASE("constant series has zero exponent") {
    const std::vector<double> ones(t.size(), 7.25);
    const ExponentFit fit = fit_exponent(t, ones, 1.0);
    CHECK(fit.exponent == 0.0);
    CHECK(fit.prefactor == doctest::Approx(7.25));
  }
  SUBCASE("polynomial-in-t mode") {
    std::vector<double> tt(300), vv(300);
    for (int i = 0; i < 300; ++i) {
      tt[i] = 0.5 + 99.5 * i / 299.0;
      vv[i] = 8.0 / 3.0 * tt[i];
    }
    const ExponentFit fit =
        fit_exponent(tt, vv, std::numeric_limits<double>::infinity());
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.prefactor == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
  }
  SUBCASE("error paths") {
    CHECK_THROWS_AS(fit_exponent(t, a, 0.5), std::invalid_argument);
    std::vector<double> bad = a;
    bad[bad.size() / 2] = 0.0;  // hits the window
    CHECK_THROWS_AS(fit_exponent(t, bad, 1.0), std::invalid_argument);
    const std::vector<double> few_t = {0.0, 0.5, 0.9};
    const std::vector<double> few_v = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_exponent(few_t, few_v, 1.0), std::invalid_argument);
  }
}

TEST_CASE("blow-up estimates on integrated trajectories") {
  SUBCASE("heisenberg") {
    const Trajectory traj = integrate(BianchiClass::Heisenberg, state(1, 2, 2),
                                      IntegratorConfig{});
    const double t_plus = estimate_blowup_time(traj);
    CHECK(t_plus == doctest::Approx(0.375).epsilon(1e-3 / 0.375));

    const SingularityReport report = singularity_report(traj);
    CHECK(report.blowup_index == 1);
    CHECK(report.t_plus > traj.t_end());
    CHECK(report.exponents.at("A").exponent ==
          doctest::Approx(-0.5).epsilon(0.04));
    CHECK(report.exponents.at("B").exponent ==
          doctest::Approx(0.25).epsilon(0.08));
    // From the exact solution, B = B0*(8*A0^2/3)^(1/4)*(T+ - t)^(1/4).
    CHECK(report.exponents.at("B").prefactor ==
          doctest::Approx(2.0 * std::pow(8.0 / 3.0, 0.25)).epsilon(0.05));
    CHECK(report.exponents.at("A").prefactor ==
          doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(0.05));
  }
  SUBCASE("symmetric e11") {
    const double r2 = std::sqrt(2.0);
    const Trajectory traj =
        integrate(BianchiClass::E11, state(r2, 2.0, r2), IntegratorConfig{});
    CHECK(estimate_blowup_time(traj) == doctest::Approx(0.1875).epsilon(1e-2));
    const SingularityReport report = singularity_report(traj);
    CHECK(report.exponents.at("A").exponent ==
          doctest::Approx(-0.5).epsilon(0.04));
    CHECK(report.exponents.at("A").prefactor ==
          doctest::Approx(std::sqrt(6.0) / 4.0).epsilon(0.02));
    CHECK(report.exponents.at("B").exponent ==
          doctest::Approx(1.0).epsilon(0.02));
    CHECK(report.exponents.at("B").prefactor ==
          doctest::Approx(32.0 / 3.0).epsilon(0.05));
  }
  SUBCASE("su2 equal-pair growth laws in polynomial-time mode") {
    IntegratorConfig config;
    config.t_max = 400.0;
    const Trajectory traj = integrate(BianchiClass::SU2, state(2, 2, 1), config);
    std::vector<double> t, a, c;
    for (const auto& sample : traj.samples) {
      t.push_back(sample.state.t);
      a.push_back(sample.state.a);
      c.push_back(sample.state.c);
    }
    const double inf = std::numeric_limits<double>::infinity();
    const ExponentFit fit_a = fit_exponent(t, a, inf);
    CHECK(fit_a.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fit_a.prefactor == doctest::Approx(8.0 / 3.0).epsilon(0.05));
    const ExponentFit fit_c = fit_exponent(t, c, inf);
    CHECK(fit_c.exponent == doctest::Approx(-2.0).epsilon(0.03));
    CHECK(fit_c.prefactor == doctest::Approx(9.0 / 16.0).epsilon(0.05));
  }
  SUBCASE("horizon trajectories are refused") {
    IntegratorConfig config;
    config.t_max = 0.1;
    const Trajectory traj =
        integrate(BianchiClass::Heisenberg, state(1, 2, 2), config);
    CHECK_THROWS_AS(estimate_blowup_time(traj), std::invalid_argument);
  }
}

TEST_CASE("regime time detection") {
  SUBCASE("heisenberg pattern holds from the start") {
    const Trajectory traj = integrate(BianchiClass::Heisenberg, state(1, 2, 2),
                                      IntegratorConfig{});
    const auto tau = detect_tau(traj, pattern({1, -1, -1}, {1, 3, 2}));
    REQUIRE(tau.has_value());
    CHECK(*tau == 0.0);
  }
  SUBCASE("su2 equal-pair pattern with positive components") {
    IntegratorConfig config;
    config.t_max = 50.0;
    const Trajectory traj =
        integrate(BianchiClass::SU2, state(2, 2, 1), config);
    const auto tau = detect_tau(traj, pattern({1, 1, 1}, {1, 2, 3}));
    REQUIRE(tau.has_value());
    CHECK(std::isfinite(*tau));
  }
  SUBCASE("su2 blow-up case enters its regime strictly after t = 0") {
    const Trajectory traj = integrate(BianchiClass::SU2, state(2, 1.6, 1.25),
                                      IntegratorConfig{});
    // R22 starts positive, so the pattern cannot hold at t = 0.
    CHECK(traj.samples.front().curvature.r22 > 0.0);
    const auto tau = detect_tau(traj, pattern({1, -1, -1}, {1, 3, 2}));
    REQUIRE(tau.has_value());
    CHECK(*tau > 0.0);
    CHECK(*tau < traj.t_end());
  }
  SUBCASE("flat e2 data never satisfies a strict sign") {
    IntegratorConfig config;
    config.t_max = 5.0;
    const Trajectory traj =
        integrate(BianchiClass::E2, state(1.3, 1.3, 0.7), config);
    CHECK(!detect_tau(traj, pattern({1, -1, -1}, {1, 2, 3})).has_value());
    CHECK(!detect_tau(traj, pattern({0, 0, -1}, {1, 2, 3})).has_value());
  }
  SUBCASE("invalid patterns are rejected") {
    const Trajectory traj = integrate(BianchiClass::Heisenberg, state(1, 2, 2),
                                      IntegratorConfig{});
    CHECK_THROWS_AS(detect_tau(traj, pattern({2, 0, 0}, {1, 2, 3})),
                    std::invalid_argument);
    CHECK_THROWS_AS(detect_tau(traj, pattern({0, 0, 0}, {1, 1, 3})),
                    std::invalid_argument);
  }
}

TEST_CASE("sl2r classification") {
  SUBCASE("A >= B at t0 = 0") {
    const SL2RCase result =
        classify_sl2r(state(2, 2, 1), IntegratorConfig{});
    CHECK(result.tag == SL2RCaseTag::Case1ADominates);
    REQUIRE(result.witness_time.has_value());
    CHECK(*result.witness_time == 0.0);
  }
  SUBCASE("A <= B - C at t0 = 0") {
    const SL2RCase result =
        classify_sl2r(state(0.5, 4, 2), IntegratorConfig{});
    CHECK(result.tag == SL2RCaseTag::Case2BDominates);
    REQUIRE(result.witness_time.has_value());
    CHECK(*result.witness_time == 0.0);
  }
  SUBCASE("interior point resolves to exactly one case") {
    const SL2RCase result =
        classify_sl2r(state(1.9, 2.0, 4.0 / 3.8), IntegratorConfig{});
    const bool is_case1 = result.tag == SL2RCaseTag::Case1ADominates;
    const bool is_case2 = result.tag == SL2RCaseTag::Case2BDominates;
    const bool is_case3 = result.tag == SL2RCaseTag::Case3Balanced;
    CHECK(int(is_case1) + int(is_case2) + int(is_case3) == 1);
    if (is_case1 || is_case2) CHECK(result.witness_time.has_value());
  }
  SUBCASE("requires B0 >= C0") {
    CHECK_THROWS_AS(classify_sl2r(state(1, 1, 2), IntegratorConfig{}),
                    std::invalid_argument);
  }
}

TEST_CASE("sub-riemannian limits") {
  SUBCASE("heisenberg dual limit (0, 1/B0, 1/C0)") {
    const Trajectory traj = integrate(BianchiClass::Heisenberg, state(1, 2, 2),
                                      IntegratorConfig{});
    const auto dual = subriemannian_limit(traj);
    CHECK(dual[0] == 0.0);
    CHECK(dual[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(dual[2] == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("su2 blow-up case rescales by the slowest vanishing coefficient") {
    const Trajectory traj = integrate(BianchiClass::SU2, state(2, 1.6, 1.25),
                                      IntegratorConfig{});
    const auto dual = subriemannian_limit(traj);
    CHECK(dual[0] == 0.0);
    CHECK(dual[1] == doctest::Approx(1.0 / 1.6).epsilon(1e-9));
    CHECK(dual[2] > 0.0);
    CHECK(std::isfinite(dual[2]));
  }
  SUBCASE("fixed points have no rescaling limit") {
    const double r = std::cbrt(4.0);
    IntegratorConfig config;
    config.t_max = 1.0;
    const Trajectory traj =
        integrate(BianchiClass::SU2, state(r, r, r), config);
    CHECK_THROWS_AS(subriemannian_limit(traj), std::invalid_argument);
  }
}
