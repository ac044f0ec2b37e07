#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "expflow/error.hpp"
#include "expflow/line_flows.hpp"
#include "expflow/random.hpp"
#include "oracles.hpp"

namespace expflow::line {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

// (x(1-x))^3 on [0, 1]: C^2 with an elementary derivative.
double c2_bump(double x) { return (x <= 0.0 || x >= 1.0) ? 0.0 : std::pow(x * (1.0 - x), 3); }
double c2_bump_prime(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 3.0 * std::pow(x * (1.0 - x), 2) * (1.0 - 2.0 * x);
}

TEST(DeltaS, ZeroShift) {
  const auto f = GridFunction::sample(0, 1, 0.01, [](double x) { return std::exp(x); });
  EXPECT_EQ(delta_s(f, 0.0).sup_norm(), 0.0);
}

TEST(DeltaS, RampGivesStep) {
  const double h = 0.01;
  const auto f = GridFunction::sample(0, 10, h, [](double x) { return x; });
  const auto d = delta_s(f, h);
  EXPECT_EQ(d.size(), f.size() - 1);
  for (double v : d.samples()) EXPECT_NEAR(v, h, 1e-13);
}

TEST(DeltaS, PeriodicFunctionFullPeriod) {
  const auto f = GridFunction::sample(0, 4, 1.0 / 256, [](double x) { return std::sin(kTwoPi * x); });
  EXPECT_LE(delta_s(f, 1.0).sup_norm(), 1e-12);
}

TEST(DeltaS, NegativeShiftAgreesWithDefinition) {
  const auto f = GridFunction::sample(0, 2, 0.01, [](double x) { return x * x; });
  const auto d = delta_s(f, -0.5);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.x(i);
    EXPECT_NEAR(d[i], (x - 0.5) * (x - 0.5) - x * x, 1e-12);
  }
}

TEST(DeltaS, SupportHintAllowsZeroExtension) {
  const auto g = GridFunction::sample(-1, 2, 0.01, c2_bump, SupportInterval{0, 1});
  const auto d = delta_s(g, 2.0);
  EXPECT_EQ(d.size(), g.size());
  EXPECT_NEAR(d.sup_distance(GridFunction::sample(-1, 2, 0.01, [](double x) { return -c2_bump(x); })), 0.0, 0.0);
}

TEST(DeltaS, Errors) {
  const auto f = GridFunction::sample(0, 1, 0.01, [](double x) { return x; });
  EXPECT_EQ(code_of([&] { delta_s(f, 0.0051); }), ErrorCode::kNonmultipleShift);
  EXPECT_EQ(code_of([&] { delta_s(f, 2.0); }), ErrorCode::kDomainUnderflow);
}

TEST(DeltaS, InterpolationModeIsFourthOrder) {
  auto error = [](double h) {
    const auto f = GridFunction::sample(0, 2, h, [](double x) { return std::sin(3.0 * x); });
    const double s = 0.3 * h + 0.25;
    const auto d = delta_s(f, s, ShiftMode::kInterpolate);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double x = d.x(i);
      worst = std::max(worst, std::abs(d[i] - (std::sin(3.0 * (x + s)) - std::sin(3.0 * x))));
    }
    return worst;
  };
  const double coarse = error(0.02);
  const double fine = error(0.01);
  EXPECT_LT(fine, 1e-6);
  EXPECT_GT(coarse / fine, 10.0);
}

TEST(BetaS, ConstantIsFixed) {
  const auto f = GridFunction::sample(0, 5, 0.01, [](double) { return 2.5; });
  for (const auto rule : {Quadrature::kSimpson, Quadrature::kGauss7}) {
    for (double v : beta_s_line(f, 1.0, rule).samples()) EXPECT_NEAR(v, 2.5, 1e-13);
  }
}

TEST(BetaS, RampAverage) {
  const auto f = GridFunction::sample(0, 10, 0.01, [](double x) { return x; });
  const auto b = beta_s_line(f, 2.0);
  EXPECT_NEAR(b.a(), 0.0, 1e-15);
  EXPECT_NEAR(b.b(), 8.0, 1e-12);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(b[i], b.x(i) + 1.0, 1e-12);
}

TEST(BetaS, KillsDerivativeOfPeriodicFunction) {
  const auto fp = GridFunction::sample(-1, 3, 1e-3, [](double x) { return kTwoPi * std::cos(kTwoPi * x); });
  for (double s : {1.0, 2.0}) EXPECT_LE(beta_s_line(fp, s).sup_norm(), 5e-6);
}

TEST(BetaS, NonMeanZeroPeriodicGivesMean) {
  const auto f = GridFunction::sample(0, 3, 1e-3, [](double x) { return 0.75 + std::sin(kTwoPi * x); });
  for (double v : beta_s_line(f, 1.0).samples()) EXPECT_NEAR(v, 0.75, 5e-6);
}

TEST(BetaS, MatchesDifferenceQuotientToFourthOrder) {
  // beta_s(F') = (1/s) Delta_s F for degree-5 F, error <= C h^4.
  const auto F = [](double x) { return 0.1 * std::pow(x, 5) - 0.7 * std::pow(x, 3) + x; };
  const auto Fp = [](double x) { return 0.5 * std::pow(x, 4) - 2.1 * x * x + 1.0; };
  for (double h : {0.02, 0.01}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const auto big_f = GridFunction::sample(-1, 3, h, F);
      const auto fp = GridFunction::sample(-1, 3, h, Fp);
      const auto lhs = beta_s_line(fp, s);
      const auto rhs = delta_s(big_f, s);
      double worst = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i] / s));
      EXPECT_LE(worst, std::pow(h, 4)) << "h = " << h << " s = " << s;
    }
  }
}

TEST(BetaS, Gauss7AgreesWithSimpson) {
  const auto f = GridFunction::sample(-1, 3, 1e-2, [](double x) { return std::exp(-x * x); });
  const auto a = beta_s_line(f, 1.0, Quadrature::kSimpson);
  const auto b = beta_s_line(f, 1.0, Quadrature::kGauss7);
  EXPECT_LE(a.sup_distance(b), 1e-7);
}

TEST(BetaS, OddStepCountUsesThreeEighths) {
  const auto f = GridFunction::sample(0, 2, 0.1, [](double x) { return x * x * x; });
  const auto b = beta_s_line(f, 0.5);
  // int_0^1 (x + t/2)^3 dt, exact for cubics.
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double x = b.x(i);
    EXPECT_NEAR(b[i], (std::pow(x + 0.5, 4) - std::pow(x, 4)) / 2.0, 1e-12);
  }
}

TEST(Periodize, SinglePeriodSupportIsUnchanged) {
  const auto g = GridFunction::sample(-2, 4, 1e-3, [](double x) { return c2_bump(x / 0.8); }, SupportInterval{0, 0.8});
  const auto p = periodize(g, 1.0);
  EXPECT_EQ(p.size(), 1001u);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_NEAR(p[i], c2_bump(p.x(i) / 0.8), 1e-15);
}

TEST(Periodize, PreservesIntegral) {
  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    const Bump b = random_bump(rng);
    const auto g = GridFunction::sample(-2, 2, 1e-3, b, SupportInterval{b.lo(), b.hi()});
    const auto p = periodize(g, 0.5);
    const double reference = oracle::simpson([&](double x) { return b(x); }, b.lo(), b.hi(), 4000);
    EXPECT_NEAR(integrate(p), reference, 1e-8);
  }
}

TEST(Periodize, TelescopingPairVanishes) {
  const auto g = GridFunction::sample(-1, 4, 1e-3, [](double x) { return c2_bump(x) - c2_bump(x - 2.0); },
                                      SupportInterval{0, 3});
  EXPECT_LE(periodize(g, 2.0).sup_norm(), 1e-15);
}

TEST(Periodize, NeedsSupportHint) {
  const auto g = GridFunction::sample(0, 1, 0.01, [](double x) { return x; });
  EXPECT_EQ(code_of([&] { periodize(g, 0.5); }), ErrorCode::kMissingSupportHint);
}

TEST(Preimage, ZeroRightHandSide) {
  const auto g = GridFunction::sample(0, 1, 0.01, [](double) { return 0.0; }, SupportInterval{0, 1});
  EXPECT_EQ(preimage_delta(g, 1.0, 0, 3).sup_norm(), 0.0);
  EXPECT_EQ(preimage_beta(g, 1.0, 0, 3).sup_norm(), 0.0);
}

TEST(Preimage, DeltaTelescopesExactly) {
  const double h = 1e-3;
  const auto g = GridFunction::sample(-1, 9, h, c2_bump, SupportInterval{0, 1});
  const auto f = preimage_delta(g, 2.0, -1, 9);
  EXPECT_LE(delta_residual(f, g, 2.0), 1e-12);
}

TEST(Preimage, BetaWithAnalyticDerivative) {
  const double h = 1e-3;
  const auto g = GridFunction::sample(-1, 9, h, c2_bump, SupportInterval{0, 1});
  const auto gp = GridFunction::sample(-1, 9, h, c2_bump_prime, SupportInterval{0, 1});
  const auto hh = preimage_beta(gp, 2.0, -1, 9);
  EXPECT_LE(beta_residual(hh, g, 2.0), 5e-6);
}

TEST(Preimage, WindowTooSmall) {
  const auto g = GridFunction::sample(-1, 9, 1e-2, c2_bump, SupportInterval{0, 1});
  EXPECT_EQ(code_of([&] { preimage_delta(g, 2.0, 0.5, 9); }), ErrorCode::kWindowTooSmall);
  EXPECT_EQ(code_of([&] { preimage_delta(g, 2.0, -1, 2.5); }), ErrorCode::kWindowTooSmall);
}

TEST(Obstruction, BumpDerivativeIsNonzero) {
  const auto gp = GridFunction::sample(-1, 3, 1e-3, c2_bump_prime, SupportInterval{0, 1});
  EXPECT_GT(obstruction_per(gp, 2.0), 0.1);
}

TEST(Obstruction, TelescopingAndZero) {
  const auto pair = GridFunction::sample(-1, 4, 1e-3, [](double x) { return c2_bump_prime(x) - c2_bump_prime(x - 1.5); },
                                         SupportInterval{0, 2.5});
  EXPECT_LE(obstruction_per(pair, 1.5), 1e-15);
  const auto zero = GridFunction::sample(0, 1, 1e-2, [](double) { return 0.0; }, SupportInterval{0, 1});
  EXPECT_EQ(obstruction_per(zero, 0.5), 0.0);
}

TEST(Integrate, ExactOnCubicsForAnyNodeCount) {
  for (double b : {1.0, 1.1, 1.2}) {
    const auto f = GridFunction::sample(0, b, 0.1, [](double x) { return x * x * x - x; });
    EXPECT_NEAR(integrate(f), std::pow(b, 4) / 4.0 - b * b / 2.0, 1e-13) << b;
  }
}

}  // namespace
}  // namespace expflow::line
