#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace expflow {

using LatticeIndex = std::vector<std::int64_t>;

std::int64_t sup_norm(const LatticeIndex& k) noexcept;

// Fourier coefficients x_k, |k|_inf <= K, of a trigonometric polynomial
//   f(x) = sum_k x_k exp(2 pi i k.x)
// on the d-torus.  Storage is dense and row-major over [-K, K]^d with the
// last coordinate fastest, which is also lexicographic order in k.
class LatticeSpectrum {
 public:
  using Complex = std::complex<double>;

  LatticeSpectrum(int dimension, int bandlimit, bool real_valued = false);
  LatticeSpectrum(int dimension, int bandlimit, std::vector<Complex> coefficients,
                  bool real_valued = false);

  // Unit coefficient at k (and at -k if real_valued, as the cosine mode
  // would need; delta itself stays complex).
  static LatticeSpectrum delta(int dimension, int bandlimit, const LatticeIndex& k);
  static LatticeSpectrum constant(int dimension, int bandlimit, double value);

  int dimension() const noexcept { return dimension_; }
  int bandlimit() const noexcept { return bandlimit_; }
  bool real_valued() const noexcept { return real_valued_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }

  bool contains(const LatticeIndex& k) const noexcept;
  std::size_t offset(const LatticeIndex& k) const;
  LatticeIndex index_at(std::size_t offset) const;
  Complex operator[](const LatticeIndex& k) const;
  Complex at_offset(std::size_t offset) const { return coefficients_.at(offset); }

  // Coefficientwise map f(k, x_k); the real-valued flag is carried over as
  // given by the caller.
  LatticeSpectrum transform(const std::function<Complex(const LatticeIndex&, Complex)>& f,
                            bool real_valued) const;

  Complex evaluate(std::span<const double> x) const;
  // Largest |x_k - conj(x_{-k})| over the band.
  double conjugate_symmetry_defect() const;
  double sup_distance(const LatticeSpectrum& other) const;
  double sup_norm() const;

  friend LatticeSpectrum operator+(const LatticeSpectrum& a, const LatticeSpectrum& b);
  friend LatticeSpectrum operator*(double scale, const LatticeSpectrum& a);
  friend bool operator==(const LatticeSpectrum&, const LatticeSpectrum&) = default;

 private:
  int dimension_;
  int bandlimit_;
  bool real_valued_;
  std::vector<Complex> coefficients_;
};

// Representative of {k, -k} whose first nonzero entry is positive.
LatticeIndex canonical_sign(LatticeIndex k);
// Order by |k|_inf, then lexicographically.
bool shell_less(const LatticeIndex& a, const LatticeIndex& b);
// All indices of [-K, K]^d in lexicographic order.
std::vector<LatticeIndex> band_indices(int dimension, int bandlimit);

}  // namespace expflow
