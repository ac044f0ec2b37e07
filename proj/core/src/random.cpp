#include "expflow/random.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "expflow/error.hpp"

namespace expflow {
namespace {

Matrix random_orthogonal(Rng& rng, int n) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  return Eigen::HouseholderQR<Matrix>(g).householderQ();
}

// Increasing sequence starting in [-2, -1] with steps in [gap, gap + 1].
std::vector<double> spaced(Rng& rng, int count, double gap) {
  std::vector<double> out;
  double x = rng.uniform(-2.0, -1.0);
  for (int i = 0; i < count; ++i) {
    out.push_back(x);
    x += gap + rng.uniform(0.0, 1.0);
  }
  return out;
}

}  // namespace

LatticeSpectrum random_spectrum(Rng& rng, int dimension, int bandlimit, bool real_valued) {
  LatticeSpectrum base(dimension, bandlimit, real_valued);
  std::vector<LatticeSpectrum::Complex> c(base.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const LatticeIndex k = base.index_at(i);
    double k2 = 0.0;
    for (const auto kj : k) k2 += static_cast<double>(kj * kj);
    c[i] = {rng.normal() / (1.0 + k2), rng.normal() / (1.0 + k2)};
  }
  if (real_valued) {
    // Average with the reflected conjugate so that x_{-k} = conj(x_k).
    std::vector<LatticeSpectrum::Complex> sym(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) sym[i] = 0.5 * (c[i] + std::conj(c[c.size() - 1 - i]));
    c = std::move(sym);
  }
  return LatticeSpectrum(dimension, bandlimit, std::move(c), real_valued);
}

double Bump::operator()(double x) const {
  const double r = (x - center) / radius;
  if (std::abs(r) >= 1.0) return 0.0;
  return amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double Bump::derivative(double x) const {
  const double r = (x - center) / radius;
  if (std::abs(r) >= 1.0) return 0.0;
  const double q = 1.0 - r * r;
  return amplitude * std::exp(1.0 - 1.0 / q) * (-2.0 * r / (q * q)) / radius;
}

Bump random_bump(Rng& rng) {
  Bump b{};
  b.center = rng.uniform(-0.5, 0.5);
  b.radius = rng.uniform(0.3, 0.8);
  b.amplitude = rng.uniform(0.5, 2.0);
  return b;
}

Matrix random_lorentz_algebra(Rng& rng, int d, double max_norm) {
  Matrix x = Matrix::Zero(d + 2, d + 2);
  for (int i = 0; i <= d; ++i) x += rng.normal() * boost_generator(d, i);
  for (int i = 0; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) x += rng.normal() * rotation_generator(d, i, j);
  }
  const double n = x.norm();
  if (n == 0.0) return x;
  return x * (max_norm * rng.uniform(0.2, 1.0) / n);
}

LorentzElement random_lorentz_element(Rng& rng, int d, double max_norm) {
  return LorentzElement::exponential(random_lorentz_algebra(rng, d, max_norm));
}

SpherePoint random_sphere_point(Rng& rng, int d) {
  Vector v(d + 1);
  do {
    for (int i = 0; i <= d; ++i) v[i] = rng.normal();
  } while (v.norm() < 1e-3);
  return SpherePoint::normalized(v);
}

Matrix random_conditioned(Rng& rng, int n, double cond) {
  if (n < 1 || !(cond >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "need n >= 1 and cond >= 1");
  const Matrix q1 = random_orthogonal(rng, n);
  const Matrix q2 = random_orthogonal(rng, n);
  Vector sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = std::exp(rng.uniform(0.0, std::log(cond)));
  sigma[0] = 1.0;
  if (n > 1) sigma[n - 1] = cond;
  return q1 * sigma.asDiagonal() * q2;
}

Matrix random_separated_matrix(Rng& rng, int n, double gap, bool defective) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need n >= 1");
  const int pairs = static_cast<int>(rng.integer(0, n / 2));
  int reals = n - 2 * pairs;
  const bool jordan = defective && reals >= 2;
  const std::vector<double> lambdas = spaced(rng, jordan ? reals - 1 : reals, gap);
  const std::vector<double> centers = spaced(rng, pairs, gap);

  Matrix b = Matrix::Zero(n, n);
  int at = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    b(at, at) = lambdas[i];
    if (jordan && i == 0) {
      b(at + 1, at + 1) = lambdas[i];
      b(at, at + 1) = 1.0;
      ++at;
    }
    ++at;
  }
  for (const double a : centers) {
    const double w = gap + rng.uniform(0.0, 1.5);
    b(at, at) = a;
    b(at + 1, at + 1) = a;
    b(at, at + 1) = -w;
    b(at + 1, at) = w;
    at += 2;
  }
  const Matrix s = random_conditioned(rng, n, 10.0);
  return s * b * s.inverse();
}

Matrix random_real_spectrum_matrix(Rng& rng, int n, double gap) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need n >= 1");
  const std::vector<double> lambdas = spaced(rng, n, gap);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = lambdas[static_cast<std::size_t>(i)];
  const Matrix s = random_conditioned(rng, n, 10.0);
  return s * d.asDiagonal() * s.inverse();
}

}  // namespace expflow
