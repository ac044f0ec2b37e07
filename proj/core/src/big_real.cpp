#include "expflow/big_real.hpp"

#include <algorithm>
#include <memory>
#include <vector>

#include "expflow/error.hpp"

namespace expflow {
namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t checked_precision(unsigned bits) {
  if (bits < MPFR_PREC_MIN || bits > 1u << 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "precision_bits out of range: " + std::to_string(bits));
  }
  return static_cast<mpfr_prec_t>(bits);
}

}  // namespace

BigReal::BigReal(unsigned precision_bits) {
  mpfr_init2(value_, checked_precision(precision_bits));
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, unsigned precision_bits) : BigReal(precision_bits) {
  exact_ = mpfr_set_si(value_, value, kRound) == 0;
}

BigReal::BigReal(double value, unsigned precision_bits) : BigReal(precision_bits) {
  exact_ = mpfr_set_d(value_, value, kRound) == 0;
}

BigReal::BigReal(const mpz_class& value, unsigned precision_bits)
    : BigReal(precision_bits) {
  exact_ = mpfr_set_z(value_, value.get_mpz_t(), kRound) == 0;
}

BigReal::BigReal(const mpq_class& value, unsigned precision_bits)
    : BigReal(precision_bits) {
  exact_ = mpfr_set_q(value_, value.get_mpq_t(), kRound) == 0;
}

BigReal::BigReal(const BigReal& other) : exact_(other.exact_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept : exact_(other.exact_) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
    exact_ = other.exact_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
    exact_ = other.exact_;
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::from_decimal(const std::string& text, unsigned precision_bits) {
  BigReal out(precision_bits);
  char* end = nullptr;
  const int ternary = mpfr_strtofr(out.value_, text.c_str(), &end, 10, kRound);
  if (end == text.c_str() || *end != '\0') {
    throw Error(ErrorCode::kInvalidArgument, "not a decimal number: '" + text + "'");
  }
  out.exact_ = ternary == 0;
  return out;
}

BigReal BigReal::pi(unsigned precision_bits) {
  BigReal out(precision_bits);
  mpfr_const_pi(out.value_, kRound);
  out.exact_ = false;
  return out;
}

BigReal BigReal::sqrt_of(long n, unsigned precision_bits) {
  return BigReal(n, precision_bits).sqrt();
}

BigReal BigReal::golden_ratio(unsigned precision_bits) {
  BigReal out = sqrt_of(5, precision_bits + 8);
  out += BigReal(1L, precision_bits + 8);
  mpfr_div_2ui(out.value_, out.value_, 1, kRound);
  BigReal rounded(precision_bits);
  mpfr_set(rounded.value_, out.value_, kRound);
  rounded.exact_ = false;
  return rounded;
}

BigReal BigReal::euler_e(unsigned precision_bits) {
  BigReal out(1L, precision_bits);
  mpfr_exp(out.value_, out.value_, kRound);
  out.exact_ = false;
  return out;
}

unsigned BigReal::precision_bits() const noexcept {
  return static_cast<unsigned>(mpfr_get_prec(value_));
}

bool BigReal::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
bool BigReal::is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
int BigReal::sign() const noexcept { return mpfr_sgn(value_); }

double BigReal::to_double() const noexcept { return mpfr_get_d(value_, kRound); }

mpq_class BigReal::to_rational() const {
  if (!is_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite value has no rational form");
  }
  if (is_zero()) return mpq_class(0);
  mpz_class mantissa;
  const mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  mpq_class out(mantissa);
  if (exponent >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(exponent));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-exponent));
  }
  out.canonicalize();
  return out;
}

mpz_class BigReal::floor() const {
  mpz_class out;
  BigReal tmp(precision_bits());
  mpfr_floor(tmp.value_, value_);
  mpfr_get_z(out.get_mpz_t(), tmp.value_, MPFR_RNDD);
  return out;
}

BigReal BigReal::distance_to_nearest_integer(mpz_class* nearest) const {
  BigReal rounded(precision_bits());
  mpfr_round(rounded.value_, value_);
  if (nearest != nullptr) {
    mpfr_get_z(nearest->get_mpz_t(), rounded.value_, kRound);
  }
  BigReal diff = *this - rounded;
  return diff.abs();
}

mpq_class BigReal::ulp() const {
  mpq_class out(1);
  const long shift = is_zero() ? -static_cast<long>(precision_bits())
                               : static_cast<long>(mpfr_get_exp(value_)) -
                                     static_cast<long>(precision_bits());
  if (shift >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(shift));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-shift));
  }
  return out;
}

BigReal BigReal::abs() const {
  BigReal out(*this);
  mpfr_abs(out.value_, value_, kRound);
  return out;
}

BigReal BigReal::sqrt() const {
  BigReal out(precision_bits());
  const int ternary = mpfr_sqrt(out.value_, value_, kRound);
  out.exact_ = exact_ && ternary == 0;
  return out;
}

BigReal BigReal::log() const {
  BigReal out(precision_bits());
  const int ternary = mpfr_log(out.value_, value_, kRound);
  out.exact_ = exact_ && ternary == 0;
  return out;
}

BigReal BigReal::frac() const {
  BigReal fl(precision_bits());
  mpfr_floor(fl.value_, value_);
  BigReal out = *this - fl;
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out(*this);
  mpfr_neg(out.value_, value_, kRound);
  return out;
}

namespace {

template <typename Op>
void apply_binary(mpfr_ptr self, mpfr_srcptr rhs, bool& exact, bool rhs_exact, Op op) {
  const mpfr_prec_t prec = std::max(mpfr_get_prec(self), mpfr_get_prec(rhs));
  if (mpfr_get_prec(self) < prec) mpfr_prec_round(self, prec, kRound);
  const int ternary = op(self, self, rhs, kRound);
  exact = exact && rhs_exact && ternary == 0;
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& rhs) {
  apply_binary(value_, rhs.value_, exact_, rhs.exact_, mpfr_add);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  apply_binary(value_, rhs.value_, exact_, rhs.exact_, mpfr_sub);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  apply_binary(value_, rhs.value_, exact_, rhs.exact_, mpfr_mul);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  if (rhs.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "division by zero");
  }
  apply_binary(value_, rhs.value_, exact_, rhs.exact_, mpfr_div);
  return *this;
}

bool operator==(const BigReal& a, const BigReal& b) noexcept {
  return mpfr_equal_p(a.value_, b.value_) != 0;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::string BigReal::to_string(int digits) const {
  const int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, value_);
  std::vector<char> buffer(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", digits, value_);
  return std::string(buffer.data(), static_cast<std::size_t>(n));
}

}  // namespace expflow
