#include "expflow/lattice_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expflow/error.hpp"

namespace expflow {
namespace {

std::size_t band_size(int dimension, int bandlimit) {
  if (dimension < 1 || bandlimit < 0) {
    throw Error(ErrorCode::kInvalidArgument, "lattice spectrum needs d >= 1 and K >= 0");
  }
  std::size_t n = 1;
  const auto side = static_cast<std::size_t>(2 * bandlimit + 1);
  for (int i = 0; i < dimension; ++i) n *= side;
  return n;
}

}  // namespace

LatticeSpectrum::LatticeSpectrum(int dimension, int bandlimit, bool real_valued)
    : dimension_(dimension),
      bandlimit_(bandlimit),
      real_valued_(real_valued),
      coefficients_(band_size(dimension, bandlimit)) {}

LatticeSpectrum::LatticeSpectrum(int dimension, int bandlimit, std::vector<Complex> coefficients,
                                 bool real_valued)
    : dimension_(dimension),
      bandlimit_(bandlimit),
      real_valued_(real_valued),
      coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != band_size(dimension, bandlimit)) {
    throw Error(ErrorCode::kInvalidArgument,
                "coefficient count does not match (2K+1)^d for d = " + std::to_string(dimension) +
                    ", K = " + std::to_string(bandlimit));
  }
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite Fourier coefficient");
    }
  }
}

LatticeSpectrum LatticeSpectrum::delta(int dimension, int bandlimit, const LatticeIndex& k) {
  LatticeSpectrum out(dimension, bandlimit);
  out.coefficients_.at(out.offset(k)) = 1.0;
  out.real_valued_ = std::all_of(k.begin(), k.end(), [](std::int64_t v) { return v == 0; });
  return out;
}

LatticeSpectrum LatticeSpectrum::constant(int dimension, int bandlimit, double value) {
  LatticeSpectrum out(dimension, bandlimit, true);
  out.coefficients_[out.offset(LatticeIndex(static_cast<std::size_t>(dimension), 0))] = value;
  return out;
}

bool LatticeSpectrum::contains(const LatticeIndex& k) const noexcept {
  if (k.size() != static_cast<std::size_t>(dimension_)) return false;
  return expflow::sup_norm(k) <= bandlimit_;
}

std::size_t LatticeSpectrum::offset(const LatticeIndex& k) const {
  if (!contains(k)) {
    throw Error(ErrorCode::kInvalidArgument,
                "index " + format_index(k) + " outside band K = " + std::to_string(bandlimit_));
  }
  const auto side = static_cast<std::size_t>(2 * bandlimit_ + 1);
  std::size_t out = 0;
  for (const auto v : k) out = out * side + static_cast<std::size_t>(v + bandlimit_);
  return out;
}

LatticeIndex LatticeSpectrum::index_at(std::size_t offset) const {
  const auto side = static_cast<std::size_t>(2 * bandlimit_ + 1);
  LatticeIndex k(static_cast<std::size_t>(dimension_));
  for (std::size_t i = k.size(); i-- > 0;) {
    k[i] = static_cast<std::int64_t>(offset % side) - bandlimit_;
    offset /= side;
  }
  return k;
}

LatticeSpectrum::Complex LatticeSpectrum::operator[](const LatticeIndex& k) const {
  return coefficients_[offset(k)];
}

LatticeSpectrum LatticeSpectrum::transform(
    const std::function<Complex(const LatticeIndex&, Complex)>& f, bool real_valued) const {
  std::vector<Complex> out(coefficients_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(index_at(i), coefficients_[i]);
  return LatticeSpectrum(dimension_, bandlimit_, std::move(out), real_valued);
}

LatticeSpectrum::Complex LatticeSpectrum::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dimension_)) {
    throw Error(ErrorCode::kInvalidArgument, "evaluation point has wrong dimension");
  }
  // Powers of exp(2 pi i x_j) per coordinate, then a nested Horner-free sum.
  const auto side = static_cast<std::size_t>(2 * bandlimit_ + 1);
  std::vector<std::vector<Complex>> powers(x.size(), std::vector<Complex>(side));
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double phase = 2.0 * std::numbers::pi * (x[j] - std::floor(x[j]));
    for (std::size_t m = 0; m < side; ++m) {
      const double km = static_cast<double>(static_cast<std::int64_t>(m) - bandlimit_);
      powers[j][m] = std::polar(1.0, km * phase);
    }
  }
  Complex sum = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] == Complex{}) continue;
    Complex term = coefficients_[i];
    std::size_t rest = i;
    for (std::size_t j = x.size(); j-- > 0;) {
      term *= powers[j][rest % side];
      rest /= side;
    }
    sum += term;
  }
  return sum;
}

double LatticeSpectrum::conjugate_symmetry_defect() const {
  double worst = 0.0;
  const std::size_t n = coefficients_.size();
  // Negating k reverses the row-major offset.
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(coefficients_[i] - std::conj(coefficients_[n - 1 - i])));
  }
  return worst;
}

double LatticeSpectrum::sup_distance(const LatticeSpectrum& other) const {
  if (other.dimension_ != dimension_ || other.bandlimit_ != bandlimit_) {
    throw Error(ErrorCode::kInvalidArgument, "spectra live on different bands");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    worst = std::max(worst, std::abs(coefficients_[i] - other.coefficients_[i]));
  }
  return worst;
}

double LatticeSpectrum::sup_norm() const {
  double worst = 0.0;
  for (const auto& c : coefficients_) worst = std::max(worst, std::abs(c));
  return worst;
}

LatticeSpectrum operator+(const LatticeSpectrum& a, const LatticeSpectrum& b) {
  if (a.dimension_ != b.dimension_ || a.bandlimit_ != b.bandlimit_) {
    throw Error(ErrorCode::kInvalidArgument, "spectra live on different bands");
  }
  std::vector<LatticeSpectrum::Complex> out(a.coefficients_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficients_[i] + b.coefficients_[i];
  return LatticeSpectrum(a.dimension_, a.bandlimit_, std::move(out),
                         a.real_valued_ && b.real_valued_);
}

LatticeSpectrum operator*(double scale, const LatticeSpectrum& a) {
  std::vector<LatticeSpectrum::Complex> out(a.coefficients_);
  for (auto& c : out) c *= scale;
  return LatticeSpectrum(a.dimension_, a.bandlimit_, std::move(out), a.real_valued_);
}

std::int64_t sup_norm(const LatticeIndex& k) noexcept {
  std::int64_t out = 0;
  for (const auto v : k) out = std::max(out, v < 0 ? -v : v);
  return out;
}

LatticeIndex canonical_sign(LatticeIndex k) {
  const auto first = std::find_if(k.begin(), k.end(), [](std::int64_t v) { return v != 0; });
  if (first != k.end() && *first < 0) {
    for (auto& v : k) v = -v;
  }
  return k;
}

bool shell_less(const LatticeIndex& a, const LatticeIndex& b) {
  const auto na = sup_norm(a);
  const auto nb = sup_norm(b);
  if (na != nb) return na < nb;
  return a < b;
}

std::vector<LatticeIndex> band_indices(int dimension, int bandlimit) {
  const LatticeSpectrum shape(dimension, bandlimit);
  std::vector<LatticeIndex> out;
  out.reserve(shape.size());
  for (std::size_t i = 0; i < shape.size(); ++i) out.push_back(shape.index_at(i));
  return out;
}

}  // namespace expflow
