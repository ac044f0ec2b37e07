#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "expflow/diophantine.hpp"
#include "expflow/error.hpp"

namespace expflow::diophantine {
namespace {

std::vector<long> terms_of(const ContinuedFraction& cf) {
  std::vector<long> out;
  for (const auto& t : cf.terms) out.push_back(t.get_si());
  return out;
}

// Floor-and-reciprocal recursion in long double; fine for a handful of terms.
std::vector<long> naive_cf(long double x, int n) {
  std::vector<long> out;
  for (int i = 0; i < n; ++i) {
    const long double a = std::floor(x);
    out.push_back(static_cast<long>(a));
    x = 1.0L / (x - a);
  }
  return out;
}

// sup_x |#{i : x_i < x}/N - x| evaluated at the one-sided limits at each
// sample; quadratic in N but free of the sorted-sample shortcut.
double brute_discrepancy(double s, int n) {
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) {
    const double v = static_cast<double>(i) * s;
    xs.push_back(v - std::floor(v));
  }
  double worst = 0.0;
  for (double y : xs) {
    int below = 0;
    int at_most = 0;
    for (double z : xs) {
      below += z < y;
      at_most += z <= y;
    }
    worst = std::max({worst, std::abs(below / double(n) - y), std::abs(at_most / double(n) - y)});
  }
  return worst;
}

TEST(ContinuedFraction, Sqrt2) {
  const auto cf = cf_expand(BigReal::sqrt_of(2, 256), 5);
  EXPECT_EQ(terms_of(cf), (std::vector<long>{1, 2, 2, 2, 2}));
  EXPECT_EQ(terms_of(cf), naive_cf(std::sqrt(2.0L), 5));
}

TEST(ContinuedFraction, GoldenRatio) {
  const auto cf = cf_expand(BigReal::golden_ratio(256), 6);
  EXPECT_EQ(terms_of(cf), (std::vector<long>{1, 1, 1, 1, 1, 1}));
}

TEST(ContinuedFraction, IntegerTerminates) {
  const auto cf = cf_expand(mpq_class(3), 10);
  EXPECT_EQ(terms_of(cf), (std::vector<long>{3}));
  EXPECT_TRUE(cf.terminated);
  EXPECT_EQ(classify(RealParameter(mpq_class(3))).classification, Classification::kRational);
}

TEST(ContinuedFraction, RationalMatchesEuclid) {
  const auto cf = cf_expand(mpq_class(355, 113), 10);
  EXPECT_EQ(terms_of(cf), (std::vector<long>{3, 7, 16}));
  EXPECT_EQ(cf.convergents.back().p, 355);
  EXPECT_EQ(cf.convergents.back().q, 113);
}

TEST(ContinuedFraction, ConvergentsSatisfyDirichlet) {
  const auto cf = cf_expand(BigReal::pi(512), 30);
  for (std::size_t n = 0; n < cf.size(); ++n) {
    const auto& c = cf.convergents[n];
    const BigReal q(c.q, 512);
    const BigReal bound = BigReal(1L, 512) / (q * q);
    EXPECT_TRUE(cf.approximation_error(n) < bound) << "n = " << n;
  }
}

TEST(ContinuedFraction, PrecisionExhaustedWhenTooManyTermsRequested) {
  try {
    cf_expand(BigReal::sqrt_of(2, 64), 200);
    FAIL() << "expected precision-exhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionExhausted);
  }
  const auto certified = cf_expand_certified(BigReal::sqrt_of(2, 64), 200);
  EXPECT_TRUE(certified.precision_limited);
  EXPECT_GT(certified.size(), 10u);
}

TEST(IrrationalityExponent, GoldenRatioNearTwo) {
  const auto cf = cf_expand(BigReal::golden_ratio(1024), 60);
  EXPECT_NEAR(irrationality_exponent_estimate(cf, 10000), 2.0, 0.1);
}

TEST(IrrationalityExponent, LiouvilleTruncations) {
  for (int n = 2; n <= 4; ++n) {
    const auto cf = cf_expand_certified(liouville_constant(n, 4096), 200);
    EXPECT_GE(irrationality_exponent_estimate(cf), static_cast<double>(n)) << "n = " << n;
  }
}

TEST(IrrationalityExponent, NondecreasingInTerms) {
  const auto full = cf_expand(BigReal::euler_e(1024), 40);
  double last = 0.0;
  for (std::size_t n = 3; n <= 40; ++n) {
    auto cf = full;
    cf.terms.resize(n);
    cf.convergents.resize(n);
    const double est = irrationality_exponent_estimate(cf);
    EXPECT_GE(est, last);
    last = est;
  }
}

TEST(Liouville, PartialSums) {
  EXPECT_EQ(liouville_partial_sum(2), mpq_class(11, 100));
  EXPECT_EQ(liouville_partial_sum(3), mpq_class(110001, 1000000));
  EXPECT_DOUBLE_EQ(liouville_constant(3).to_double(), 0.110001);
}

TEST(Liouville, InsufficientPrecisionRejected) {
  try {
    liouville_constant(6, 64);
    FAIL() << "expected precision-exhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionExhausted);
  }
}

TEST(Classify, Sqrt2IsCertified) {
  const auto r = classify(parse_real_parameter("sqrt2"));
  EXPECT_EQ(r.classification, Classification::kNonLiouvilleCertified);
  ASSERT_TRUE(r.exponent_estimate);
  EXPECT_NEAR(*r.exponent_estimate, 2.0, 0.2);
}

TEST(Classify, RationalHasNoEstimate) {
  const auto r = classify(RealParameter(mpq_class(22, 7)));
  EXPECT_EQ(r.classification, Classification::kRational);
  EXPECT_FALSE(r.exponent_estimate);
  ASSERT_TRUE(r.rational);
  EXPECT_EQ(r.rational->p, 22);
  EXPECT_EQ(r.rational->q, 7);
}

TEST(IntegerRelation, HalfAndThird) {
  const std::vector<RealParameter> theta{RealParameter(mpq_class(1, 2)), RealParameter(mpq_class(1, 3))};
  const auto r = integer_relation_search(theta, 3, 0.0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->k, (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(r->target, 1);
}

TEST(IntegerRelation, Sqrt2Sqrt3HasNoneUpTo50) {
  const std::vector<RealParameter> theta{parse_real_parameter("sqrt2"), parse_real_parameter("sqrt3")};
  EXPECT_FALSE(integer_relation_search(theta, 50, 1e-9));
}

TEST(IntegerRelation, ThreeQuarters) {
  const std::vector<RealParameter> theta{parse_real_parameter("0.75")};
  const auto r = integer_relation_search(theta, 4, 0.0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->k, (std::vector<std::int64_t>{4}));
  EXPECT_EQ(r->target, 3);
}

TEST(IntegerRelation, ReturnedRelationsRecheck) {
  const std::vector<RealParameter> theta{parse_real_parameter("phi"), parse_real_parameter("phi*phi")};
  const auto r = integer_relation_search(theta, 5, 1e-30);
  ASSERT_TRUE(r);
  BigReal dot(0L, 512);
  for (std::size_t j = 0; j < theta.size(); ++j) dot += BigReal(r->k[j], 512) * theta[j].value();
  EXPECT_LE((dot - BigReal(r->target, 512)).abs().to_double(), 1e-30);
}

TEST(Discrepancy, RationalCycle) {
  EXPECT_NEAR(star_discrepancy(RealParameter(mpq_class(1, 3)), 300), 1.0 / 3.0, 1.0 / 300.0);
}

TEST(Discrepancy, Sqrt2IsSmall) {
  const double d = star_discrepancy(parse_real_parameter("sqrt2"), 1000);
  EXPECT_LT(d, 0.05);
  EXPECT_NEAR(d, brute_discrepancy(std::sqrt(2.0), 1000), 1e-12);
}

TEST(Discrepancy, ZeroRotationIsMaximal) {
  EXPECT_DOUBLE_EQ(star_discrepancy(RealParameter(mpq_class(0)), 50), 1.0);
}

TEST(Discrepancy, AgreesWithBruteForce) {
  for (const char* s : {"phi", "e", "pi", "liouville(3)"}) {
    const auto x = parse_real_parameter(s);
    for (int n : {7, 64, 250}) {
      EXPECT_NEAR(star_discrepancy(x, n), brute_discrepancy(x.to_double(), n), 1e-12) << s << " " << n;
    }
  }
}

TEST(Discrepancy, LowerBound) {
  const auto x = parse_real_parameter("phi");
  for (int n : {10, 100, 1000}) EXPECT_GE(star_discrepancy(x, n), 0.5 / n);
}

}  // namespace
}  // namespace expflow::diophantine
