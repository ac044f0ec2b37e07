#include <algorithm>

#include "expflow/diophantine.hpp"
#include "expflow/error.hpp"

namespace expflow::diophantine {
namespace {

mpz_class floor_of(const mpq_class& x) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const mpq_class& x) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

// Builds convergents incrementally from the standard recurrence.
class ConvergentBuilder {
 public:
  Convergent next(const mpz_class& a) {
    Convergent c{a * p1_ + p2_, a * q1_ + q2_};
    p2_ = p1_;
    q2_ = q1_;
    p1_ = c.p;
    q1_ = c.q;
    return c;
  }
  mpz_class peek_denominator(const mpz_class& a) const { return a * q1_ + q2_; }

 private:
  mpz_class p1_ = 1, q1_ = 0, p2_ = 0, q2_ = 1;
};

// Continued fraction of every number in [lo, hi]: quotients are emitted
// while both ends agree.  A zero-width interval expands exactly.
ContinuedFraction expand_enclosure(BigReal value, std::optional<mpq_class> exact,
                                   mpq_class lo, mpq_class hi, std::size_t max_terms) {
  ContinuedFraction cf{std::move(value), {}, {}, 0, false, false};
  cf.precision_bits = cf.value.precision_bits();
  ConvergentBuilder builder;

  mpz_class rational_limit = 1;
  mpz_mul_2exp(rational_limit.get_mpz_t(), rational_limit.get_mpz_t(), cf.precision_bits / 4);

  auto push = [&](const mpz_class& a) {
    cf.terms.push_back(a);
    cf.convergents.push_back(builder.next(a));
  };

  while (cf.terms.size() < max_terms) {
    if (lo == hi) {
      const mpz_class a = floor_of(lo);
      push(a);
      mpq_class rest = lo - a;
      if (rest == 0) {
        cf.terminated = true;
        break;
      }
      lo = hi = 1 / rest;
      continue;
    }
    const mpz_class inner_integer = ceil_of(lo);
    if (inner_integer <= hi) {
      // The enclosure contains a rational with this partial quotient as its
      // last one.  Accept it only when the denominator is small enough that
      // working precision could not have produced the coincidence.
      const bool single_integer = hi - lo < 1;
      if (single_integer && builder.peek_denominator(inner_integer) <= rational_limit) {
        push(inner_integer);
        cf.terminated = true;
      } else {
        cf.precision_limited = true;
      }
      break;
    }
    const mpz_class a = floor_of(lo);
    push(a);
    mpq_class next_lo = 1 / mpq_class(hi - a);
    mpq_class next_hi = 1 / mpq_class(lo - a);
    lo = std::move(next_lo);
    hi = std::move(next_hi);
  }
  if (exact) {
    cf.value = BigReal(*exact, cf.precision_bits);
  }
  return cf;
}

ContinuedFraction require_terms(ContinuedFraction cf, std::size_t n_terms) {
  if (cf.terms.size() < n_terms && !cf.terminated) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "only " + std::to_string(cf.terms.size()) + " of " + std::to_string(n_terms) +
                    " partial quotients are certified at " +
                    std::to_string(cf.precision_bits) + " bits");
  }
  return cf;
}

}  // namespace

BigReal ContinuedFraction::approximation_error(std::size_t n) const {
  const Convergent& c = convergents.at(n);
  const mpq_class approx(c.p, c.q);
  mpq_class diff = value.to_rational() - approx;
  diff = abs(diff);
  return BigReal(diff, precision_bits);
}

ContinuedFraction cf_expand_certified(const BigReal& x, std::size_t max_terms) {
  if (!x.is_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "continued fraction of a non-finite value");
  }
  const mpq_class center = x.to_rational();
  if (x.is_exact()) {
    return expand_enclosure(x, center, center, center, max_terms);
  }
  const mpq_class radius = 2 * x.ulp();
  return expand_enclosure(x, std::nullopt, center - radius, center + radius, max_terms);
}

ContinuedFraction cf_expand_certified(const RealParameter& x, std::size_t max_terms) {
  if (x.is_exact()) {
    const mpq_class& q = *x.exact();
    return expand_enclosure(BigReal(q, x.precision_bits()), q, q, q, max_terms);
  }
  return cf_expand_certified(x.value(), max_terms);
}

ContinuedFraction cf_expand(const BigReal& x, std::size_t n_terms) {
  return require_terms(cf_expand_certified(x, n_terms), n_terms);
}

ContinuedFraction cf_expand(const mpq_class& x, std::size_t n_terms, unsigned precision_bits) {
  return require_terms(expand_enclosure(BigReal(x, precision_bits), x, x, x, n_terms), n_terms);
}

ContinuedFraction cf_expand(const RealParameter& x, std::size_t n_terms) {
  return require_terms(cf_expand_certified(x, n_terms), n_terms);
}

namespace {

struct ExponentSample {
  std::size_t index;
  BigReal exponent;
};

// -ln|x - p_n/q_n| / ln q_n for every convergent whose error is resolved by
// the working precision (nonzero and above the enclosure radius).
std::vector<ExponentSample> convergent_exponents(const ContinuedFraction& cf,
                                                 const mpz_class& min_denominator) {
  const mpz_class floor_q = std::max(min_denominator, mpz_class(2));
  BigReal radius(0L, cf.precision_bits);
  if (!cf.value.is_exact()) radius = BigReal(mpq_class(2 * cf.value.ulp()), cf.precision_bits);

  std::vector<ExponentSample> out;
  for (std::size_t n = 0; n < cf.convergents.size(); ++n) {
    const Convergent& c = cf.convergents[n];
    if (c.q < floor_q) continue;
    if (cf.terminated && n + 1 == cf.convergents.size()) continue;
    BigReal err = cf.approximation_error(n);
    if (err.is_zero() || err <= radius) continue;
    BigReal exponent = -(err.log() / BigReal(c.q, cf.precision_bits).log());
    out.push_back({n, std::move(exponent)});
  }
  return out;
}

}  // namespace

double irrationality_exponent_estimate(const ContinuedFraction& cf,
                                       const mpz_class& min_denominator) {
  if (cf.convergents.size() < 3) {
    throw Error(ErrorCode::kInsufficientTerms,
                "exponent estimate needs at least 3 convergents, have " +
                    std::to_string(cf.convergents.size()));
  }
  const auto samples = convergent_exponents(cf, min_denominator);
  if (samples.empty()) {
    throw Error(ErrorCode::kInsufficientTerms,
                "no resolved convergent with denominator >= " + min_denominator.get_str());
  }
  const auto best = std::max_element(samples.begin(), samples.end(),
                                     [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
  return best->exponent.to_double();
}

mpq_class liouville_partial_sum(int n_terms) {
  if (n_terms < 1) {
    throw Error(ErrorCode::kInvalidArgument, "liouville_constant needs n_terms >= 1");
  }
  mpq_class sum(0);
  unsigned long factorial = 1;
  for (int k = 1; k <= n_terms; ++k) {
    factorial *= static_cast<unsigned long>(k);
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, factorial);
    sum += mpq_class(1, denominator);
  }
  sum.canonicalize();
  return sum;
}

BigReal liouville_constant(int n_terms, unsigned precision_bits) {
  if (n_terms < 1) {
    throw Error(ErrorCode::kInvalidArgument, "liouville_constant needs n_terms >= 1");
  }
  // (n+1)! decimal digits, i.e. the first omitted term sits at working precision.
  constexpr double kLog2Of10 = 3.3219280948873623;
  double next_factorial = 1.0;
  for (int k = 2; k <= n_terms + 1; ++k) next_factorial *= k;
  const double bits_needed = next_factorial * kLog2Of10;
  if (n_terms > 9 || bits_needed > static_cast<double>(precision_bits)) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "liouville_constant(" + std::to_string(n_terms) + ") needs at least " +
                    std::to_string(static_cast<long long>(bits_needed) + 1) + " bits, have " +
                    std::to_string(precision_bits));
  }
  return BigReal(liouville_partial_sum(n_terms), precision_bits);
}

}  // namespace expflow::diophantine
