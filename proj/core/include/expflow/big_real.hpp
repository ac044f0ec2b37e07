#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>

namespace expflow {

inline constexpr unsigned kDefaultPrecisionBits = 512;

// Value-semantic MPFR real with an explicit per-object precision.
//
// Each value also tracks whether it is known to be exact: MPFR reports a
// zero ternary value when a result needed no rounding, and exactness
// propagates through arithmetic.  Enclosure-based algorithms (continued
// fractions) use this to decide between a zero-width and a 2-ulp interval.
class BigReal {
 public:
  explicit BigReal(unsigned precision_bits = kDefaultPrecisionBits);
  BigReal(long value, unsigned precision_bits);
  BigReal(double value, unsigned precision_bits);
  BigReal(const mpz_class& value, unsigned precision_bits);
  BigReal(const mpq_class& value, unsigned precision_bits);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  // Parses a decimal literal ("0.110001", "-3e-5") at the given precision.
  static BigReal from_decimal(const std::string& text, unsigned precision_bits);

  static BigReal pi(unsigned precision_bits);
  static BigReal sqrt_of(long n, unsigned precision_bits);
  static BigReal golden_ratio(unsigned precision_bits);
  static BigReal euler_e(unsigned precision_bits);

  unsigned precision_bits() const noexcept;
  bool is_exact() const noexcept { return exact_; }
  void mark_inexact() noexcept { exact_ = false; }

  bool is_zero() const noexcept;
  bool is_finite() const noexcept;
  int sign() const noexcept;

  double to_double() const noexcept;
  // Exact dyadic rational equal to the stored binary value.
  mpq_class to_rational() const;
  mpz_class floor() const;
  // Distance to the nearest integer (in [0, 1/2]) and that integer.
  BigReal distance_to_nearest_integer(mpz_class* nearest = nullptr) const;
  // Unit in the last place of the stored value (2^(exp - prec)).
  mpq_class ulp() const;

  BigReal abs() const;
  BigReal sqrt() const;
  BigReal log() const;
  BigReal frac() const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);

  friend BigReal operator+(BigReal lhs, const BigReal& rhs) { return lhs += rhs; }
  friend BigReal operator-(BigReal lhs, const BigReal& rhs) { return lhs -= rhs; }
  friend BigReal operator*(BigReal lhs, const BigReal& rhs) { return lhs *= rhs; }
  friend BigReal operator/(BigReal lhs, const BigReal& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigReal& a, const BigReal& b) noexcept;
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept;

  // Scientific notation with the requested number of significant digits.
  std::string to_string(int digits = 30) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

 private:
  mpfr_t value_;
  bool exact_ = true;
};

}  // namespace expflow
