#include "expflow/diophantine.hpp"

#include <algorithm>
#include <cmath>

#include "expflow/error.hpp"

namespace expflow::diophantine {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kRational:
      return "rational";
    case Classification::kNonLiouvilleCertified:
      return "non-liouville-certified";
    case Classification::kLiouvilleEvidence:
      return "liouville-evidence";
    case Classification::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

namespace {

BigReal log_ratio(const BigReal& error, const mpz_class& q, unsigned bits) {
  return -(error.log() / BigReal(q, bits).log());
}

bool resolved(const ContinuedFraction& cf, std::size_t n, const BigReal& error) {
  if (error.is_zero()) return false;
  if (cf.terminated && n + 1 == cf.convergents.size()) return false;
  if (cf.value.is_exact()) return true;
  return error > BigReal(mpq_class(2 * cf.value.ulp()), cf.precision_bits);
}

}  // namespace

DiophantineReport classify(const RealParameter& x, const ClassifyOptions& options) {
  const ContinuedFraction cf = cf_expand_certified(x, options.max_terms);
  DiophantineReport report;
  report.bound_searched = cf.size();
  report.terms_used = cf.size();

  if (cf.terminated) {
    const Convergent& last = cf.convergents.back();
    report.classification = Classification::kRational;
    report.rational = last;
    report.witnesses.push_back({last.p, last.q, cf.approximation_error(cf.size() - 1)});
    return report;
  }
  if (cf.size() < 3) return report;

  // Walk every resolved convergent once: the bound over q >= 2 certifies,
  // the bound over large q is the evidence estimate.
  std::optional<BigReal> sup_all;
  std::optional<BigReal> sup_tail;
  struct Scored {
    std::size_t n;
    BigReal exponent;
  };
  std::vector<Scored> scored;
  for (std::size_t n = 0; n < cf.convergents.size(); ++n) {
    const Convergent& c = cf.convergents[n];
    if (c.q < 2) continue;
    BigReal error = cf.approximation_error(n);
    if (!resolved(cf, n, error)) continue;
    BigReal mu = log_ratio(error, c.q, cf.precision_bits);
    if (!sup_all || mu > *sup_all) sup_all = mu;
    if (c.q >= options.evidence_min_denominator && (!sup_tail || mu > *sup_tail)) sup_tail = mu;
    scored.push_back({n, std::move(mu)});
  }
  if (!sup_all || !sup_tail) return report;

  report.exponent_estimate = sup_tail->to_double();
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.exponent > b.exponent; });
  constexpr std::size_t kMaxWitnesses = 5;
  for (std::size_t i = 0; i < std::min(kMaxWitnesses, scored.size()); ++i) {
    const Convergent& c = cf.convergents[scored[i].n];
    report.witnesses.push_back({c.p, c.q, cf.approximation_error(scored[i].n)});
  }

  if (*report.exponent_estimate > options.evidence_threshold) {
    report.classification = Classification::kLiouvilleEvidence;
  } else {
    report.classification = Classification::kNonLiouvilleCertified;
    report.certified_exponent = static_cast<int>(std::ceil(sup_all->to_double()));
  }
  return report;
}

namespace {

// Odometer over [-s, s]^d in lexicographic order.
bool advance(std::vector<std::int64_t>& k, std::int64_t s) {
  for (std::size_t i = k.size(); i-- > 0;) {
    if (k[i] < s) {
      ++k[i];
      return true;
    }
    k[i] = -s;
  }
  return false;
}

bool on_shell_canonical(const std::vector<std::int64_t>& k, std::int64_t s) {
  const auto first = std::find_if(k.begin(), k.end(), [](std::int64_t v) { return v != 0; });
  if (first == k.end() || *first < 0) return false;
  return std::any_of(k.begin(), k.end(), [s](std::int64_t v) { return v == s || v == -s; });
}

}  // namespace

std::optional<IntegerRelation> integer_relation_search(std::span<const RealParameter> theta,
                                                       std::int64_t bound, double tol) {
  if (theta.empty() || bound < 1 || !(tol >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "integer_relation_search needs d >= 1, bound >= 1 and tol >= 0");
  }
  const bool all_exact =
      std::all_of(theta.begin(), theta.end(), [](const RealParameter& t) { return t.is_exact(); });
  unsigned bits = 0;
  std::vector<double> approx;
  for (const auto& t : theta) {
    bits = std::max(bits, t.precision_bits());
    approx.push_back(t.to_double());
  }
  const BigReal tolerance(tol, bits);

  for (std::int64_t s = 1; s <= bound; ++s) {
    std::vector<std::int64_t> k(theta.size(), -s);
    do {
      if (!on_shell_canonical(k, s)) continue;
      if (all_exact) {
        mpq_class dot(0);
        for (std::size_t i = 0; i < k.size(); ++i) dot += mpq_class(mpz_class(k[i])) * *theta[i].exact();
        mpz_class nearest;
        // Round half away from zero via floor(dot + 1/2).
        mpq_class shifted = dot + mpq_class(1, 2);
        mpz_fdiv_q(nearest.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
        mpq_class residual = abs(mpq_class(dot - nearest));
        if (residual <= mpq_class(tol)) {
          return IntegerRelation{k, nearest, BigReal(residual, bits)};
        }
        continue;
      }
      // Double-precision screen, then the decision at full precision.
      double dot_approx = 0.0;
      for (std::size_t i = 0; i < k.size(); ++i) dot_approx += static_cast<double>(k[i]) * approx[i];
      const double screen = std::abs(dot_approx - std::nearbyint(dot_approx));
      if (screen > tol + 1e-9 * (1.0 + std::abs(dot_approx))) continue;
      BigReal dot(0L, bits);
      for (std::size_t i = 0; i < k.size(); ++i) {
        dot += BigReal(static_cast<long>(k[i]), bits) * theta[i].value();
      }
      mpz_class nearest;
      BigReal residual = dot.distance_to_nearest_integer(&nearest);
      if (residual <= tolerance) return IntegerRelation{k, nearest, std::move(residual)};
    } while (advance(k, s));
  }
  return std::nullopt;
}

double star_discrepancy(const RealParameter& s, std::int64_t n_points) {
  if (n_points < 1) {
    throw Error(ErrorCode::kInvalidArgument, "star_discrepancy needs N >= 1");
  }
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(n_points));
  if (s.is_exact()) {
    const mpq_class& q = *s.exact();
    const mpz_class& den = q.get_den();
    for (std::int64_t n = 1; n <= n_points; ++n) {
      mpz_class num = q.get_num() * mpz_class(static_cast<long>(n));
      mpz_class rem;
      mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      x.push_back(mpq_class(rem, den).get_d());
    }
  } else {
    for (std::int64_t n = 1; n <= n_points; ++n) {
      x.push_back((s.value() * BigReal(static_cast<long>(n), s.precision_bits())).frac().to_double());
    }
  }
  std::sort(x.begin(), x.end());
  const double count = static_cast<double>(n_points);
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double upper = static_cast<double>(i + 1) / count - x[i];
    const double lower = x[i] - static_cast<double>(i) / count;
    d = std::max({d, upper, lower});
  }
  return d;
}

}  // namespace expflow::diophantine
