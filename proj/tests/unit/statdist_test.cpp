#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curves.hpp"
#include "satlab/errors.hpp"
#include "satlab/rng.hpp"
#include "satlab/statdist.hpp"

namespace satlab {
namespace {

constexpr double kPi = std::numbers::pi;

// The textbook form of the distance, kept as an independent reference.
double arccos_distance(double p1, double p2) {
  const double c = std::sqrt(p1 * p2) + std::sqrt((1 - p1) * (1 - p2));
  return std::acos(std::min(1.0, c));
}

// Greedy chain found by scanning a fine grid rather than solving for roots.
std::uint64_t grid_packing(double p1, double p2, std::uint64_t m, double step) {
  std::uint64_t count = 0;
  double current = p1;
  for (double x = p1; x <= p2 + 1e-15; x += step) {
    if (distinguishable(current, x, m)) {
      current = x;
      ++count;
    }
  }
  return count;
}

TEST(DeltaP, Examples) {
  EXPECT_DOUBLE_EQ(delta_p(0.5, 100), 0.05);
  EXPECT_EQ(delta_p(0.0, 17), 0.0);
  EXPECT_EQ(delta_p(1.0, 17), 0.0);
  EXPECT_THROW(delta_p(0.5, 0), PreconditionError);
  EXPECT_THROW(delta_p(1.5, 3), PreconditionError);
}

TEST(DeltaP, BoundedByHalfOverRootM) {
  for (double p = 0; p <= 1.0; p += 0.01) {
    EXPECT_LE(delta_p(p, 25), 0.1 + 1e-15);
  }
}

TEST(Distinguishable, Examples) {
  EXPECT_TRUE(distinguishable(0.0, 1.0 / 16, 15));
  EXPECT_FALSE(distinguishable(0.0, 1.0 / 16, 14));
  EXPECT_FALSE(distinguishable(0.3, 0.3, 1000));
  EXPECT_FALSE(distinguishable(0.0, 0.0, 5));
  EXPECT_TRUE(distinguishable(0.0, 1.0, 1));
}

TEST(Distinguishable, Symmetric) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    const auto m = 1 + rng.uniform_below(500);
    EXPECT_EQ(distinguishable(a, b, m), distinguishable(b, a, m));
  }
}

TEST(MinTrials, FromZeroExamples) {
  EXPECT_EQ(min_trials_from_zero(1.0 / 16), 15u);
  EXPECT_EQ(min_trials_from_zero(0.5), 1u);
  EXPECT_EQ(min_trials_from_zero(1.0), 0u);
  EXPECT_FALSE(min_trials_from_zero(0.0).has_value());
  EXPECT_THROW(min_trials_from_zero(-0.1), PreconditionError);
}

TEST(MinTrials, PowersOfTwoAreExact) {
  for (int n = 1; n <= 20; ++n) {
    const auto m = min_trials_from_zero(std::ldexp(1.0, -n));
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(*m, (std::uint64_t{1} << n) - 1) << "n=" << n;
  }
}

TEST(MinTrials, IsSmallestPassingCount) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const double a = rng.uniform01();
    const double b = std::min(1.0, a + 0.01 + 0.5 * rng.uniform01());
    const auto m = min_trials(a, b);
    ASSERT_TRUE(m.has_value());
    if (*m > 0) {
      EXPECT_TRUE(distinguishable(a, b, *m));
      if (*m > 1) EXPECT_FALSE(distinguishable(a, b, *m - 1));
    }
  }
  EXPECT_FALSE(min_trials(0.2, 0.2).has_value());
  EXPECT_EQ(min_trials(0.0, 1.0 / 16), 15u);
}

TEST(BernoulliDistance, Examples) {
  EXPECT_EQ(bernoulli_distance(0.37, 0.37), 0.0);
  EXPECT_NEAR(bernoulli_distance(0.0, 1.0), kPi / 2, 1e-15);
  EXPECT_NEAR(bernoulli_distance(0.1, 0.9), std::acos(0.6), 1e-15);
  EXPECT_NEAR(bernoulli_distance(0.1, 0.9), 0.927295, 1e-6);
  EXPECT_THROW(bernoulli_distance(0.1, 1.1), PreconditionError);
}

TEST(BernoulliDistance, MatchesArccosForm) {
  Rng rng(99);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    const double d = bernoulli_distance(a, b);
    EXPECT_NEAR(d, arccos_distance(a, b), 1e-7);
    EXPECT_EQ(d, bernoulli_distance(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, kPi / 2);
  }
}

TEST(BernoulliDistance, StaysAccurateForClosePoints) {
  // For p near 1/2 a separation of 1e-12 gives distance ~1e-12; the arccos form
  // loses almost every digit here.
  const double upper = 0.5 + 1e-12;
  const double d = bernoulli_distance(0.5, upper);
  EXPECT_NEAR(d, upper - 0.5, 1e-26);
  EXPECT_NEAR(bernoulli_distance(0.0, 1e-300), 1e-150, 1e-164);
}

TEST(BernoulliDistance, TriangleAdditivity) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    double v[3] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    std::sort(std::begin(v), std::end(v));
    EXPECT_NEAR(bernoulli_distance(v[0], v[2]), bernoulli_distance(v[0], v[1]) + bernoulli_distance(v[1], v[2]),
                1e-12);
  }
}

TEST(BernoulliDistance, QuadratureAgrees) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    EXPECT_NEAR(bernoulli_distance_quadrature(a, b), bernoulli_distance(a, b), 1e-9);
  }
  EXPECT_NEAR(bernoulli_distance_quadrature(0.0, 1.0), kPi / 2, 1e-9);
  EXPECT_NEAR(bernoulli_distance_quadrature(0.0, 1.0 / 32), std::acos(std::sqrt(1 - 1.0 / 32)), 1e-9);
}

TEST(CurveDistance, CosineSquaredIsArcLength) {
  const auto c = ParamCurve::make([](double t) { return std::cos(t) * std::cos(t); }, 0.2, 1.2,
                                  [](double t) { return -std::sin(2 * t); });
  EXPECT_NEAR(curve_distance(c), 1.0, 1e-6);
}

TEST(CurveDistance, CosineSquaredWithNumericDerivative) {
  const auto c = ParamCurve::make([](double t) { return std::cos(t) * std::cos(t); }, 0.2, 1.2);
  EXPECT_NEAR(curve_distance(c), 1.0, 1e-6);
}

TEST(CurveDistance, CubeMatchesClosedForm) {
  const auto c = ParamCurve::make([](double f) { return f * f * f; }, 0.1, 0.9,
                                  [](double f) { return 3 * f * f; });
  EXPECT_NEAR(curve_distance(c), bernoulli_distance(0.001, 0.729), 1e-6);
}

TEST(CurveDistance, DegenerateInterval) {
  const auto c = ParamCurve::make([](double t) { return t; }, 0.4, 0.4);
  EXPECT_EQ(curve_distance(c), 0.0);
}

TEST(CurveDistance, RandomMonotoneCurvesMatchEndpoints) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto rc = testing::make_random_curve(rng);
    const double closed = bernoulli_distance(rc.curve(rc.curve.t1()), rc.curve(rc.curve.t2()));
    EXPECT_NEAR(curve_distance(rc.curve), closed, 1e-6) << rc.family << " #" << i;
  }
}

TEST(ParamCurve, RejectsBadCurves) {
  EXPECT_THROW(ParamCurve::make([](double t) { return std::sin(t); }, 0.0, 3.0), PreconditionError);
  EXPECT_THROW(ParamCurve::make([](double t) { return 2 * t; }, 0.0, 1.0), PreconditionError);
  EXPECT_THROW(ParamCurve::make([](double) { return 0.5; }, 0.0, 1.0), PreconditionError);
  EXPECT_THROW(ParamCurve::make([](double t) { return t; }, 0.6, 0.2), PreconditionError);
  EXPECT_THROW(ParamCurve::make(nullptr, 0.0, 1.0), PreconditionError);
}

TEST(ParamCurve, NumericDerivativeNearEnds) {
  const auto c = ParamCurve::make([](double t) { return t * t; }, 0.1, 0.9);
  EXPECT_NEAR(c.derivative(0.1), 0.2, 1e-8);
  EXPECT_NEAR(c.derivative(0.5), 1.0, 1e-8);
  EXPECT_NEAR(c.derivative(0.9), 1.8, 1e-8);
}

TEST(DeltaTheta, Examples) {
  EXPECT_NEAR(delta_theta(kPi / 4, 100), 0.05, 1e-15);
  EXPECT_NEAR(delta_theta(0.3, 100), 0.05, 1e-15);
  EXPECT_NEAR(delta_theta(0.7, 400), 0.5 * delta_theta(0.7, 100), 1e-15);
  EXPECT_EQ(delta_theta(0.0, 100), 0.05);
  EXPECT_NEAR(delta_theta(kPi / 2, 100), 0.05, 1e-15);
  EXPECT_THROW(delta_theta(2.0, 100), PreconditionError);
}

TEST(DeltaTheta, ConstantAcrossDomain) {
  for (std::uint64_t m : {1ull, 7ull, 100ull, 123456ull}) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 10000; ++i) {
      const double theta = 0.01 + (kPi / 2 - 0.02) * i / 10000.0;
      const double v = delta_theta(theta, m);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_LE(hi - lo, 1e-12) << "m=" << m;
  }
}

TEST(DeltaParam, MatchesDeltaThetaOnCosineCurve) {
  const auto c = ParamCurve::make([](double t) { return std::cos(t) * std::cos(t); }, 0.1, 1.4,
                                  [](double t) { return -std::sin(2 * t); });
  for (double t : {0.2, 0.7, 1.3}) EXPECT_NEAR(delta_param(c, t, 64), delta_theta(t, 64), 1e-14);
}

TEST(Packing, NextPointIsSmallestDistinguishable) {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const double p = 0.9 * rng.uniform01();
    const auto m = 1 + rng.uniform_below(10000);
    const double x = next_distinguishable(p, m);
    if (x > 1.0) continue;
    EXPECT_TRUE(distinguishable(p, x, m));
    EXPECT_FALSE(distinguishable(p, x - 1e-9, m)) << p << " " << m;
  }
}

TEST(Packing, SmallCaseMatchesGridSearch) {
  EXPECT_EQ(packing_count(0.0, 1.0, 4), 3u);
  EXPECT_EQ(grid_packing(0.0, 1.0, 4, 1e-6), 3u);
  for (std::uint64_t m : {1ull, 2ull, 9ull, 30ull, 100ull}) {
    EXPECT_EQ(packing_count(0.0, 1.0, m), grid_packing(0.0, 1.0, m, 1e-6)) << "m=" << m;
  }
}

TEST(Packing, Examples) {
  EXPECT_EQ(packing_count(0.4, 0.4, 100), 0u);
  EXPECT_EQ(packing_count(0.9, 0.1, 1000), packing_count(0.1, 0.9, 1000));
}

TEST(Packing, NormalizedCountConverges) {
  const double target = std::acos(0.6);
  const double r4 = static_cast<double>(packing_count(0.1, 0.9, 10000)) / 100.0;
  EXPECT_LE(std::abs(r4 - target) / target, 0.05);
  const double r6 = static_cast<double>(packing_count(0.1, 0.9, 1000000)) / 1000.0;
  EXPECT_LE(std::abs(r6 - target) / target, 0.02);
  EXPECT_LT(std::abs(r6 - target), std::abs(r4 - target));
}

TEST(Polarization, Examples) {
  EXPECT_EQ(polarization_prob(Orientation::make(0.0)).p, 1.0);
  EXPECT_NEAR(polarization_prob(Orientation::make(kPi / 2)).p, 0.0, 1e-30);
  EXPECT_NEAR(polarization_prob(Orientation::make(kPi / 4)).p, 0.5, 1e-15);
  EXPECT_THROW(Orientation::make(-0.1), PreconditionError);
  EXPECT_THROW(Orientation::make(3.0), PreconditionError);
}

TEST(Polarization, StrictlyDecreasing) {
  double prev = 2.0;
  for (int i = 0; i <= 1000; ++i) {
    const double p = polarization_prob(Orientation::make(kPi / 2 * i / 1000.0)).p;
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(EnsembleDistance, Examples) {
  for (int n = 1; n <= 20; ++n) {
    const double g = std::ldexp(1.0, -n);
    EXPECT_NEAR(sat_ensemble_distance(0.0, g), std::acos(std::sqrt(1 - g)), 1e-12);
  }
  EXPECT_NEAR(sat_ensemble_distance(0.0, 1.0 / 32), 0.17771060084511167, 1e-15);
  EXPECT_EQ(sat_ensemble_distance(0.2, 0.2), 0.0);
  EXPECT_NEAR(sat_ensemble_distance(0.0, 1.0), kPi / 2, 1e-15);
}

}  // namespace
}  // namespace satlab
