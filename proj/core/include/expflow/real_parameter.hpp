#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "expflow/big_real.hpp"

namespace expflow {

// A flow parameter (rotation number, interval length, ...) that is either
// an exact rational or a high-precision real.  Resonance questions such as
// "is l*k.theta an integer" are answered in exact arithmetic whenever every
// ingredient is exact.
class RealParameter {
 public:
  RealParameter() : RealParameter(mpq_class(0)) {}
  explicit RealParameter(const mpq_class& exact,
                         unsigned precision_bits = kDefaultPrecisionBits);
  explicit RealParameter(BigReal approx);

  static RealParameter from_double(double value,
                                   unsigned precision_bits = kDefaultPrecisionBits);

  bool is_exact() const noexcept { return exact_.has_value(); }
  const std::optional<mpq_class>& exact() const noexcept { return exact_; }
  const BigReal& value() const noexcept { return value_; }
  double to_double() const noexcept { return value_.to_double(); }
  unsigned precision_bits() const noexcept { return value_.precision_bits(); }

  RealParameter operator-() const;
  friend RealParameter operator+(const RealParameter& a, const RealParameter& b);
  friend RealParameter operator-(const RealParameter& a, const RealParameter& b);
  friend RealParameter operator*(const RealParameter& a, const RealParameter& b);
  friend RealParameter operator/(const RealParameter& a, const RealParameter& b);

 private:
  std::optional<mpq_class> exact_;
  BigReal value_;
};

// Parses parameter expressions used on the command line and in configs:
//   integers, decimals ("0.110001", "1e-6"), fractions ("1/3"), the
//   constants pi, e, phi, sqrtN (e.g. sqrt2), functions sqrt(x) and
//   liouville(n), with + - * / and parentheses.  Decimal literals and
//   fractions stay exact.
RealParameter parse_real_parameter(const std::string& text,
                                   unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace expflow
