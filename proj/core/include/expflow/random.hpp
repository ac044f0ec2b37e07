#pragma once

// Seeded generators for the randomized inputs shared by the CLI, tests and
// benchmarks.  One seed determines every stream; split() derives
// independent child streams so that adding a check does not shift others.

#include <cstdint>
#include <random>

#include "expflow/lattice_spectrum.hpp"
#include "expflow/lorentz.hpp"

namespace expflow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL))); }

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>()(engine_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Coefficients with |x_k| ~ N(0,1) / (1 + |k|^2); conjugate symmetric when
// real_valued.
LatticeSpectrum random_spectrum(Rng& rng, int dimension, int bandlimit, bool real_valued = true);

// A exp(1 - 1/(1 - r^2)), r = (x - center) / radius, supported on
// [center - radius, center + radius].
struct Bump {
  double center;
  double radius;
  double amplitude;
  double operator()(double x) const;
  double derivative(double x) const;
  double lo() const { return center - radius; }
  double hi() const { return center + radius; }
};

// Center in [-0.5, 0.5], radius in [0.3, 0.8], amplitude in [0.5, 2].
Bump random_bump(Rng& rng);

// Random element of so(1,d+1) with Frobenius norm max_norm * U(0.2, 1].
Matrix random_lorentz_algebra(Rng& rng, int d, double max_norm = 1.0);
LorentzElement random_lorentz_element(Rng& rng, int d, double max_norm = 1.0);
SpherePoint random_sphere_point(Rng& rng, int d);

// Q1 diag(sigma) Q2 with orthogonal Q and log-uniform sigma in [1, cond].
Matrix random_conditioned(Rng& rng, int n, double cond);

// S B S^{-1} with B block diagonal: real eigenvalues and 2x2 rotation-scaling
// blocks, all eigenvalues pairwise at least `gap` apart, cond(S) <= 10.
// With `defective`, one real eigenvalue carries a 2x2 Jordan block.
Matrix random_separated_matrix(Rng& rng, int n, double gap = 0.5, bool defective = false);

// S diag(lambda) S^{-1}, distinct real lambda at least `gap` apart.
Matrix random_real_spectrum_matrix(Rng& rng, int n, double gap = 0.5);

}  // namespace expflow
