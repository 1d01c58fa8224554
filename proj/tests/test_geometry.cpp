#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "brf/geometry.hpp"

using namespace brf;

namespace {

MetricState state(double a, double b, double c) { return {0.0, a, b, c}; }

// Deterministic positive states, log-uniform in [0.2, 5].
std::vector<MetricState> random_states(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(std::log(0.2), std::log(5.0));
  std::vector<MetricState> out;
  for (int i = 0; i < n; ++i)
    out.push_back(state(std::exp(dist(rng)), std::exp(dist(rng)),
                        std::exp(dist(rng))));
  return out;
}

}  // namespace

TEST_CASE("structure constants per class") {
  auto check = [](BianchiClass cls, int l1, int l2, int l3) {
    const StructureConstants sc = structure_constants(cls);
    CHECK(sc.l1 == l1);
    CHECK(sc.l2 == l2);
    CHECK(sc.l3 == l3);
  };
  check(BianchiClass::Heisenberg, 1, 0, 0);
  check(BianchiClass::SU2, 1, 1, 1);
  check(BianchiClass::E11, 1, 0, -1);
  check(BianchiClass::E2, 1, 1, 0);
  check(BianchiClass::SL2R, -1, 1, 1);
}

TEST_CASE("class names round-trip") {
  for (BianchiClass cls : kAllClasses)
    CHECK(class_from_name(class_name(cls)) == cls);
  CHECK(!class_from_name("nil").has_value());
}

TEST_CASE("curvature pinned examples") {
  SUBCASE("heisenberg (1,2,2)") {
    const CurvatureData c = curvature(BianchiClass::Heisenberg, state(1, 2, 2));
    CHECK(c.r11 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.r22 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c.r33 == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c.scalar == doctest::Approx(-0.5).epsilon(1e-15));
  }
  SUBCASE("round su2 point") {
    const double r = std::cbrt(4.0);
    const CurvatureData c = curvature(BianchiClass::SU2, state(r, r, r));
    CHECK(c.r11 == doctest::Approx(2.0).epsilon(1e-14));  // r^3/2 with r^3 = 4
    CHECK(c.r22 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.r33 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.scalar == doctest::Approx(1.5 * r * r).epsilon(1e-14));
  }
  SUBCASE("flat e2 line A=B") {
    const CurvatureData c = curvature(BianchiClass::E2, state(1.3, 1.3, 0.7));
    CHECK(c.r11 == 0.0);
    CHECK(c.r22 == 0.0);
    CHECK(c.r33 == 0.0);
    CHECK(c.scalar == 0.0);
  }
  SUBCASE("symmetric e11 (sqrt2, 2, sqrt2)") {
    const double r2 = std::sqrt(2.0);
    const CurvatureData c = curvature(BianchiClass::E11, state(r2, 2.0, r2));
    CHECK(c.r11 == doctest::Approx(0.0));
    CHECK(c.r33 == doctest::Approx(0.0));
    CHECK(c.r22 == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(c.scalar == doctest::Approx(-4.0).epsilon(1e-14));
  }
}

TEST_CASE("curvature rejects degenerate states") {
  CHECK_THROWS_AS(curvature(BianchiClass::SU2, state(0.0, 1, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(curvature(BianchiClass::SU2, state(1, -2, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(curvature(BianchiClass::SU2, state(1, 1, 1e-301)),
                  std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(curvature(BianchiClass::SU2, state(nan, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("heisenberg sign pattern holds everywhere") {
  for (const MetricState& s : random_states(200, 17)) {
    const CurvatureData c = curvature(BianchiClass::Heisenberg, s);
    CHECK(c.r11 > 0.0);
    CHECK(c.r22 < 0.0);
    CHECK(c.r33 < 0.0);
    CHECK(c.scalar < 0.0);
  }
}

TEST_CASE("scalar curvature is nonpositive for heisenberg, e11 and e2") {
  for (BianchiClass cls :
       {BianchiClass::Heisenberg, BianchiClass::E11, BianchiClass::E2})
    for (const MetricState& s : random_states(100, 23))
      CHECK(curvature(cls, s).scalar <= 0.0);
}

TEST_CASE("envelope rate ordering is trivial for every class") {
  for (BianchiClass cls : kAllClasses)
    for (const MetricState& s : random_states(50, 29)) {
      const CurvatureData c = curvature(cls, s);
      CHECK(2.0 / 3.0 * c.scalar - 2.0 * c.max_component() <=
            2.0 / 3.0 * c.scalar - 2.0 * c.min_component());
      CHECK(std::isfinite(c.r11));
      CHECK(std::isfinite(c.r22));
      CHECK(std::isfinite(c.r33));
      CHECK(std::isfinite(c.scalar));
    }
}

TEST_CASE("heisenberg curvature scaling in A") {
  for (double scale : {2.0, 10.0})
    for (const MetricState& s : random_states(50, 31)) {
      const CurvatureData base = curvature(BianchiClass::Heisenberg, s);
      const CurvatureData scaled = curvature(
          BianchiClass::Heisenberg, state(scale * s.a, s.b, s.c));
      const double s3 = scale * scale * scale;
      const double s2 = scale * scale;
      CHECK(scaled.r11 == doctest::Approx(s3 * base.r11).epsilon(1e-13));
      CHECK(scaled.r22 == doctest::Approx(s2 * base.r22).epsilon(1e-13));
      CHECK(scaled.r33 == doctest::Approx(s2 * base.r33).epsilon(1e-13));
      CHECK(scaled.scalar == doctest::Approx(s2 * base.scalar).epsilon(1e-13));
    }
}

TEST_CASE("su2 curvature is equivariant under coefficient permutations") {
  // All six permutations of (A,B,C) act the same way on (R11,R22,R33).
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                           {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const MetricState& s : random_states(40, 37)) {
    const double coeff[3] = {s.a, s.b, s.c};
    const CurvatureData base = curvature(BianchiClass::SU2, s);
    const double ricci[3] = {base.r11, base.r22, base.r33};
    for (const auto& p : perms) {
      const CurvatureData permuted = curvature(
          BianchiClass::SU2, state(coeff[p[0]], coeff[p[1]], coeff[p[2]]));
      CHECK(permuted.r11 == doctest::Approx(ricci[p[0]]).epsilon(1e-12));
      CHECK(permuted.r22 == doctest::Approx(ricci[p[1]]).epsilon(1e-12));
      CHECK(permuted.r33 == doctest::Approx(ricci[p[2]]).epsilon(1e-12));
      CHECK(permuted.scalar == doctest::Approx(base.scalar).epsilon(1e-12));
    }
  }
}

TEST_CASE("per-class curvature matches the structure-constant formula") {
  // On the normalized surface A*B*C = 4 every class obeys the same rule:
  //   R_ii = (Xi/2) * [li^2*Xi^2 - (lj*Xj - lk*Xk)^2]   (cyclic in i,j,k).
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> dist(std::log(0.3), std::log(3.0));
  for (BianchiClass cls : kAllClasses) {
    const StructureConstants sc = structure_constants(cls);
    const double l[3] = {double(sc.l1), double(sc.l2), double(sc.l3)};
    for (int trial = 0; trial < 50; ++trial) {
      const double a = std::exp(dist(rng)), b = std::exp(dist(rng));
      const MetricState s = state(a, b, 4.0 / (a * b));
      const double x[3] = {s.a, s.b, s.c};
      const CurvatureData c = curvature(cls, s);
      const double ricci[3] = {c.r11, c.r22, c.r33};
      double trace = 0.0;
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double cross = l[j] * x[j] - l[k] * x[k];
        const double expected =
            0.5 * x[i] * (l[i] * l[i] * x[i] * x[i] - cross * cross);
        CHECK(ricci[i] == doctest::Approx(expected).epsilon(1e-12));
        trace += expected / x[i];
      }
      CHECK(c.scalar == doctest::Approx(trace).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar curvature equals the trace of the Ricci endomorphism") {
  for (BianchiClass cls : kAllClasses)
    for (const MetricState& s : random_states(50, 41)) {
      const CurvatureData c = curvature(cls, s);
      const double trace = c.r11 / s.a + c.r22 / s.b + c.r33 / s.c;
      CHECK(c.scalar == doctest::Approx(trace).epsilon(1e-12));
    }
}
