#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expflow {

enum class ErrorCode {
  kPrecisionExhausted,
  kInsufficientTerms,
  kResonantMultiplier,
  kDomainUnderflow,
  kNonmultipleShift,
  kMissingSupportHint,
  kWindowTooSmall,
  kStepRejection,
  kIllConditionedSpectrum,
  kComplexSpectrum,
  kNonpositiveDenominator,
  kInvalidArgument,
  kInvalidConfig,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library carries one of the codes above so
// callers (and the CLI exit-code contract) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a band index makes an averaging multiplier vanish (or fall
// under the caller's tolerance), i.e. the operator is not injective there.
class ResonantMultiplierError : public Error {
 public:
  ResonantMultiplierError(std::vector<std::int64_t> index, double magnitude);

  const std::vector<std::int64_t>& index() const noexcept { return index_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::vector<std::int64_t> index_;
  double magnitude_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kPrecisionExhausted: return "precision-exhausted";
    case ErrorCode::kInsufficientTerms: return "insufficient-terms";
    case ErrorCode::kResonantMultiplier: return "resonant-multiplier";
    case ErrorCode::kDomainUnderflow: return "domain-underflow";
    case ErrorCode::kNonmultipleShift: return "nonmultiple-shift";
    case ErrorCode::kMissingSupportHint: return "missing-support-hint";
    case ErrorCode::kWindowTooSmall: return "window-too-small";
    case ErrorCode::kStepRejection: return "step-rejection";
    case ErrorCode::kIllConditionedSpectrum: return "ill-conditioned-spectrum";
    case ErrorCode::kComplexSpectrum: return "complex-spectrum";
    case ErrorCode::kNonpositiveDenominator: return "nonpositive-denominator";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

inline std::string format_index(const std::vector<std::int64_t>& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(k[i]);
  }
  return out + ")";
}

inline ResonantMultiplierError::ResonantMultiplierError(
    std::vector<std::int64_t> index, double magnitude)
    : Error(ErrorCode::kResonantMultiplier,
            "multiplier vanishes at k = " + format_index(index) +
                " (|m| = " + std::to_string(magnitude) + ")"),
      index_(std::move(index)),
      magnitude_(magnitude) {}

}  // namespace expflow
