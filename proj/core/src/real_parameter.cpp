#include "expflow/real_parameter.hpp"

#include <algorithm>
#include <cctype>

#include "expflow/diophantine.hpp"
#include "expflow/error.hpp"

namespace expflow {

RealParameter::RealParameter(const mpq_class& exact, unsigned precision_bits)
    : exact_(exact), value_(exact, precision_bits) {}

RealParameter::RealParameter(BigReal approx) : value_(std::move(approx)) {
  if (value_.is_exact() && value_.is_finite()) exact_ = value_.to_rational();
}

RealParameter RealParameter::from_double(double value, unsigned precision_bits) {
  return RealParameter(BigReal(value, precision_bits));
}

RealParameter RealParameter::operator-() const {
  if (exact_) return RealParameter(mpq_class(-*exact_), precision_bits());
  return RealParameter(-value_);
}

namespace {

unsigned joint_precision(const RealParameter& a, const RealParameter& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace

RealParameter operator+(const RealParameter& a, const RealParameter& b) {
  if (a.exact_ && b.exact_) {
    return RealParameter(mpq_class(*a.exact_ + *b.exact_), joint_precision(a, b));
  }
  return RealParameter(a.value_ + b.value_);
}

RealParameter operator-(const RealParameter& a, const RealParameter& b) {
  if (a.exact_ && b.exact_) {
    return RealParameter(mpq_class(*a.exact_ - *b.exact_), joint_precision(a, b));
  }
  return RealParameter(a.value_ - b.value_);
}

RealParameter operator*(const RealParameter& a, const RealParameter& b) {
  if (a.exact_ && b.exact_) {
    return RealParameter(mpq_class(*a.exact_ * *b.exact_), joint_precision(a, b));
  }
  return RealParameter(a.value_ * b.value_);
}

RealParameter operator/(const RealParameter& a, const RealParameter& b) {
  if (b.value_.is_zero() && (!b.exact_ || *b.exact_ == 0)) {
    throw Error(ErrorCode::kInvalidArgument, "division by zero in parameter expression");
  }
  if (a.exact_ && b.exact_) {
    return RealParameter(mpq_class(*a.exact_ / *b.exact_), joint_precision(a, b));
  }
  return RealParameter(a.value_ / b.value_);
}

namespace {

// Recursive-descent parser over the small expression grammar documented in
// the header.
class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, unsigned bits) : text_(text), bits_(bits) {}

  RealParameter parse() {
    RealParameter out = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  RealParameter expression() {
    RealParameter lhs = term();
    for (;;) {
      skip_space();
      if (consume('+')) {
        lhs = lhs + term();
      } else if (consume('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  RealParameter term() {
    RealParameter lhs = factor();
    for (;;) {
      skip_space();
      if (consume('*')) {
        lhs = lhs * factor();
      } else if (consume('/')) {
        lhs = lhs / factor();
      } else {
        return lhs;
      }
    }
  }

  RealParameter factor() {
    skip_space();
    if (consume('-')) return -factor();
    if (consume('+')) return factor();
    if (consume('(')) {
      RealParameter inner = expression();
      expect(')');
      return inner;
    }
    if (pos_ < text_.size() &&
        (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      return number();
    }
    if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      return named();
    }
    fail("expected a number, constant or '('");
  }

  RealParameter number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    std::string mantissa = text_.substr(start, pos_ - start);
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t probe = pos_ + 1;
      if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
      if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
        std::size_t end = probe;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
          ++end;
        }
        exponent = std::stol(text_.substr(pos_ + 1, end - pos_ - 1));
        pos_ = end;
      }
    }
    if (std::count(mantissa.begin(), mantissa.end(), '.') > 1) {
      fail("malformed decimal literal");
    }
    const auto dot = mantissa.find('.');
    if (dot != std::string::npos) {
      exponent -= static_cast<long>(mantissa.size() - dot - 1);
      mantissa.erase(dot, 1);
    }
    if (mantissa.empty()) fail("malformed decimal literal");
    mpq_class value{mpz_class(mantissa, 10)};
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0) {
      value *= scale;
    } else {
      value /= scale;
    }
    value.canonicalize();
    return RealParameter(value, bits_);
  }

  RealParameter named() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::string name = text_.substr(start, pos_ - start);
    skip_space();
    if (name == "pi") return RealParameter(BigReal::pi(bits_));
    if (name == "e") return RealParameter(BigReal::euler_e(bits_));
    if (name == "phi") return RealParameter(BigReal::golden_ratio(bits_));
    if (name.rfind("sqrt", 0) == 0 && name.size() > 4) {
      const long n = std::stol(name.substr(4));
      return sqrt_of(RealParameter(mpq_class(n), bits_));
    }
    if (name == "sqrt") {
      expect('(');
      RealParameter inner = expression();
      expect(')');
      return sqrt_of(inner);
    }
    if (name == "liouville") {
      expect('(');
      RealParameter inner = expression();
      expect(')');
      if (!inner.exact() || inner.exact()->get_den() != 1 || *inner.exact() < 1) {
        fail("liouville(n) needs a positive integer n");
      }
      return RealParameter(
          diophantine::liouville_constant(static_cast<int>(inner.exact()->get_num().get_si()),
                                          bits_));
    }
    fail("unknown name '" + name + "'");
  }

  RealParameter sqrt_of(const RealParameter& x) {
    if (x.value().sign() < 0) fail("sqrt of a negative number");
    if (x.exact()) {
      const mpq_class& q = *x.exact();
      mpz_class num_root, den_root;
      if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
        mpz_sqrt(num_root.get_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(den_root.get_mpz_t(), q.get_den_mpz_t());
        return RealParameter(mpq_class(num_root, den_root), bits_);
      }
    }
    BigReal root = x.value().sqrt();
    root.mark_inexact();
    return RealParameter(std::move(root));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot parse '" + text_ + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  const std::string& text_;
  unsigned bits_;
  std::size_t pos_ = 0;
};

}  // namespace

RealParameter parse_real_parameter(const std::string& text, unsigned precision_bits) {
  return ExpressionParser(text, precision_bits).parse();
}

}  // namespace expflow
