#pragma once

// Diophantine classification of flow parameters: continued fractions,
// irrationality-exponent evidence, Liouville constructions, bounded
// integer-relation search and star discrepancy of Kronecker sequences.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expflow/big_real.hpp"
#include "expflow/real_parameter.hpp"

namespace expflow::diophantine {

struct Convergent {
  mpz_class p;
  mpz_class q;
};

// Partial quotients a0; a1, a2, ... of a real number together with their
// convergents p_n/q_n.  Only quotients certified by the value's enclosure
// are stored.
struct ContinuedFraction {
  BigReal value;
  std::vector<mpz_class> terms;
  std::vector<Convergent> convergents;
  unsigned precision_bits = kDefaultPrecisionBits;
  // The expansion ended because value is p/q within working precision.
  bool terminated = false;
  // The enclosure stopped certifying further quotients.
  bool precision_limited = false;

  std::size_t size() const noexcept { return terms.size(); }
  // Absolute error |value - p_n/q_n| evaluated at working precision.
  BigReal approximation_error(std::size_t n) const;
};

// Expands x into at most n_terms partial quotients.  Throws
// ErrorCode::kPrecisionExhausted if fewer than n_terms quotients can be
// certified and the expansion did not terminate.
ContinuedFraction cf_expand(const BigReal& x, std::size_t n_terms);
ContinuedFraction cf_expand(const mpq_class& x, std::size_t n_terms,
                            unsigned precision_bits = kDefaultPrecisionBits);
ContinuedFraction cf_expand(const RealParameter& x, std::size_t n_terms);

// As cf_expand, but returns the certified prefix instead of throwing.
ContinuedFraction cf_expand_certified(const BigReal& x, std::size_t max_terms);
ContinuedFraction cf_expand_certified(const RealParameter& x, std::size_t max_terms);

// Finite evidence for the irrationality exponent: the supremum over
// convergents with q_n >= min_denominator (and p_n/q_n != x) of
// -ln|x - p_n/q_n| / ln q_n.  Nondecreasing in the number of terms used.
double irrationality_exponent_estimate(const ContinuedFraction& cf,
                                       const mpz_class& min_denominator = 2);

// Partial sum sum_{k=1..n} 10^{-k!} at the given precision.  Requires
// precision_bits >= (n+1)! * log2(10) so that the truncation represents the
// full Liouville constant to working precision.
BigReal liouville_constant(int n_terms, unsigned precision_bits = kDefaultPrecisionBits);
// Exact rational value of the same partial sum.
mpq_class liouville_partial_sum(int n_terms);

enum class Classification { kRational, kNonLiouvilleCertified, kLiouvilleEvidence, kUndetermined };

std::string to_string(Classification c);

struct Witness {
  mpz_class p;
  mpz_class q;
  BigReal error;
};

struct ClassifyOptions {
  std::size_t max_terms = 400;
  // Exponent estimates above this count as Liouville evidence.
  double evidence_threshold = 5.0;
  // Convergents below this denominator are pre-asymptotic and skipped in the
  // evidence estimate (they still enter the certified bound).
  mpz_class evidence_min_denominator = 10000;
};

struct DiophantineReport {
  Classification classification = Classification::kUndetermined;
  // Set for kRational.
  std::optional<Convergent> rational;
  // Set for kNonLiouvilleCertified: |x - p/q| >= q^{-N_max} on every
  // computed convergent with q >= 2.
  std::optional<int> certified_exponent;
  // Not applicable (empty) for rationals.
  std::optional<double> exponent_estimate;
  std::vector<Witness> witnesses;
  std::size_t bound_searched = 0;
  std::size_t terms_used = 0;
};

DiophantineReport classify(const RealParameter& x, const ClassifyOptions& options = {});

struct IntegerRelation {
  std::vector<std::int64_t> k;
  mpz_class target;
  BigReal residual;
};

// Exhaustive search over 0 != k, |k|_inf <= bound, for k.theta within tol
// of an integer.  k and -k are the same relation; the representative with
// first nonzero entry positive is reported.  Candidates are visited by
// |k|_inf, then lexicographically, so the first hit is returned.  An empty
// result certifies independence only up to the bound.
std::optional<IntegerRelation> integer_relation_search(std::span<const RealParameter> theta,
                                                       std::int64_t bound, double tol);

// Star discrepancy of {n s} mod 1, n = 1..N, by the sorted-sample formula
// max_i max(i/N - x_(i), x_(i) - (i-1)/N).
double star_discrepancy(const RealParameter& s, std::int64_t n_points);

}  // namespace expflow::diophantine
