#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "expflow/circle_flows.hpp"
#include "expflow/error.hpp"

namespace expflow::circle {
namespace {

constexpr double kPi = std::numbers::pi;

double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

// phi' = 1 - cos phi, phi(0) = pi: -cot(phi/2) = t, so phi = pi + 2 atan t.
double parabolic_orbit(double t) { return kPi + 2.0 * std::atan(t); }
// phi' = sin phi: tan(phi/2) = tan(theta1/2) e^t.
double hyperbolic_orbit(double theta1, double t) {
  return 2.0 * std::atan(std::tan(0.5 * theta1) * std::exp(t));
}

TEST(TrigPolynomial, EvaluationAndDerivatives) {
  const TrigPolynomial z(0.5, {1.0, -0.25}, {0.0, 2.0});
  for (double phi : {0.0, 0.7, 2.9, 5.5}) {
    const double direct = 0.5 + std::cos(phi) - 0.25 * std::cos(2 * phi) + 2.0 * std::sin(2 * phi);
    EXPECT_NEAR(z(phi), direct, 1e-14);
    const double d1 = -std::sin(phi) + 0.5 * std::sin(2 * phi) + 4.0 * std::cos(2 * phi);
    EXPECT_NEAR(z.derivative(phi, 1), d1, 1e-13);
    const double d2 = -std::cos(phi) + std::cos(2 * phi) - 8.0 * std::sin(2 * phi);
    EXPECT_NEAR(z.derivative(phi, 2), d2, 1e-13);
  }
  EXPECT_EQ(z.degree(), 2);
  EXPECT_DOUBLE_EQ(z.sup_bound(), 3.75);
  EXPECT_THROW(TrigPolynomial(NAN, {}, {}), Error);
}

TEST(MakeField, ZerosWithMultiplicity) {
  const auto sine = make_field(TrigPolynomial(0, {}, {1.0}));
  ASSERT_EQ(sine.zero_set.size(), 2u);
  EXPECT_NEAR(sine.zero_set[0].angle, 0.0, 1e-12);
  EXPECT_NEAR(sine.zero_set[1].angle, kPi, 1e-12);
  EXPECT_EQ(sine.zero_set[0].multiplicity, 1);

  const auto parabolic = make_field(TrigPolynomial(1.0, {-1.0}, {}));
  ASSERT_EQ(parabolic.zero_set.size(), 1u);
  EXPECT_LE(angle_gap(parabolic.zero_set[0].angle, 0.0), 1e-6);
  EXPECT_EQ(parabolic.zero_set[0].multiplicity, 2);

  const auto four = make_field(TrigPolynomial(0, {}, {0.0, 1.0}));
  EXPECT_EQ(four.zero_set.size(), 4u);
  for (const auto& z : four.zero_set) EXPECT_LE(std::abs(four.z(z.angle)), 1e-10);

  EXPECT_TRUE(make_field(TrigPolynomial::constant_field(1.0)).zero_set.empty());
}

TEST(Integrate, RotationFlow) {
  const auto field = make_field(TrigPolynomial::constant_field(1.0));
  const double theta1 = 0.4;
  const auto curve = integrate_circle_flow(field, theta1, 10.0, 0.01);
  ASSERT_EQ(curve.t.size(), curve.phi.size());
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    EXPECT_LE(angle_gap(curve.phi[i], theta1 + curve.t[i]), 1e-11);
  }
  const auto pulled = pullback_along_flow(TrigPolynomial(0, {1.0}, {}), curve);
  for (std::size_t i = 0; i < pulled.size(); ++i) {
    EXPECT_NEAR(pulled[i], std::cos(theta1 + pulled.x(i)), 1e-11);
  }
}

TEST(Integrate, ParabolicFieldMatchesClosedForm) {
  const auto field = make_field(TrigPolynomial(1.0, {-1.0}, {}));
  const auto curve = integrate_circle_flow(field, kPi, 40.0, 0.01);
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    EXPECT_LE(angle_gap(curve.phi[i], parabolic_orbit(curve.t[i])), 1e-8) << curve.t[i];
  }
  // Approaches the fixed point from both sides without crossing it.
  EXPECT_GT(curve.phi.back(), 2.0 * kPi - 0.1);
  EXPECT_LT(curve.phi.front(), 0.1);
}

TEST(Integrate, HyperbolicFieldMatchesClosedForm) {
  const auto field = make_field(TrigPolynomial(0, {}, {1.0}));
  const double theta1 = 1.0;
  const auto curve = integrate_circle_flow(field, theta1, 15.0, 0.01);
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    EXPECT_LE(angle_gap(curve.phi[i], hyperbolic_orbit(theta1, curve.t[i])), 1e-9);
  }
}

TEST(Integrate, FourthOrderConvergence) {
  const auto field = make_field(TrigPolynomial(1.0, {-1.0}, {}));
  auto error = [&](double dt) {
    const auto c = integrate_circle_flow(field, kPi, 2.0, dt, 1e-3);
    return angle_gap(c.phi.back(), parabolic_orbit(2.0));
  };
  const double ratio = error(0.1) / error(0.05);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 40.0);
}

TEST(Integrate, Errors) {
  const auto field = make_field(TrigPolynomial(0, {}, {0.0, 0.0, 0.0, 50.0}));
  try {
    integrate_circle_flow(field, 0.1, 5.0, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStepRejection);
  }
  EXPECT_THROW(integrate_circle_flow(field, 0.1, 1.0, 0.0), Error);
  EXPECT_THROW(integrate_circle_flow(field, 0.1, -1.0, 0.1), Error);
}

TEST(Pullback, ConstantStaysConstant) {
  const auto field = make_field(TrigPolynomial(0.2, {-1.0}, {0.3}));
  const auto curve = integrate_circle_flow(field, 2.0, 5.0, 0.01);
  const auto pulled = pullback_along_flow(TrigPolynomial::constant_field(3.0), curve);
  for (double v : pulled.samples()) EXPECT_EQ(v, 3.0);
}

TEST(Pullback, LimitsAtBothEndsEqualValueAtFixedPoint) {
  const auto field = make_field(TrigPolynomial(1.0, {-1.0}, {}));
  const auto curve = integrate_circle_flow(field, kPi, 400.0, 0.05);
  const TrigPolynomial f(0.3, {1.0}, {0.5});
  const auto pulled = pullback_along_flow(f, curve);
  EXPECT_NEAR(pulled.samples().back(), f(0.0), 1e-2);
  EXPECT_NEAR(pulled.samples().front(), f(0.0), 1e-2);
}

TEST(Pullback, TailOscillationShrinks) {
  const auto field = make_field(TrigPolynomial(1.0, {-1.0}, {}));
  const auto curve = integrate_circle_flow(field, kPi, 80.0, 0.01);
  const auto pulled = pullback_along_flow(TrigPolynomial(0, {}, {1.0}), curve);
  double last = INFINITY;
  for (double T : {10.0, 20.0, 40.0}) {
    const double osc = tail_oscillation(pulled, T, 2.0 * T);
    EXPECT_LT(osc, last) << T;
    last = osc;
  }
  EXPECT_THROW(tail_oscillation(pulled, 100.0, 200.0), Error);
}

}  // namespace
}  // namespace expflow::circle
