#include "expflow/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expflow/error.hpp"

namespace expflow {
namespace {

void require_dimension(int d) {
  if (d < 1) throw Error(ErrorCode::kInvalidArgument, "sphere dimension must be >= 1");
}

double denominator(const LorentzElement& g, const SpherePoint& x) {
  if (g.dimension() != x.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "element and point live in different dimensions");
  }
  const double den = g.a() + g.b().dot(x.coords());
  if (!(den > 0.0)) {
    throw Error(ErrorCode::kNonpositiveDenominator,
                "a + b.x = " + std::to_string(den) + " is not positive");
  }
  return den;
}

}  // namespace

Matrix minkowski_metric(int d) {
  require_dimension(d);
  Matrix eta = -Matrix::Identity(d + 2, d + 2);
  eta(0, 0) = 1.0;
  return eta;
}

LorentzElement::LorentzElement(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() < 3 || !g_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "Lorentz element must be a finite (d+2)x(d+2) matrix");
  }
  const Matrix eta = minkowski_metric(dimension());
  const double scale = std::max(1.0, g_.squaredNorm());
  const double defect = (g_.transpose() * eta * g_ - eta).norm();
  if (defect > 1e-10 * scale) {
    throw Error(ErrorCode::kInvalidArgument,
                "g^T eta g differs from eta by " + std::to_string(defect));
  }
  if (!(a() > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Lorentz element reverses time (a <= 0)");
  if (std::abs(g_.determinant() - 1.0) > 1e-6) {
    throw Error(ErrorCode::kInvalidArgument, "Lorentz element has det != 1");
  }
}

LorentzElement LorentzElement::identity(int d) {
  require_dimension(d);
  return LorentzElement(Matrix::Identity(d + 2, d + 2));
}

LorentzElement LorentzElement::exponential(const Matrix& x, double t) {
  if (x.rows() != x.cols() || x.rows() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "generator must be (d+2)x(d+2)");
  }
  return LorentzElement(matrix_exp(x, t));
}

LorentzElement LorentzElement::operator*(const LorentzElement& other) const {
  if (other.dimension() != dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "Lorentz elements of different dimensions");
  }
  return LorentzElement(g_ * other.g_);
}

LorentzElement LorentzElement::inverse() const {
  const Matrix eta = minkowski_metric(dimension());
  return LorentzElement(eta * g_.transpose() * eta);
}

SpherePoint::SpherePoint(Vector x) : x_(std::move(x)) {
  if (x_.size() < 2 || !x_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "sphere point needs at least 2 finite coordinates");
  }
  if (std::abs(x_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "sphere point is not a unit vector");
  }
}

SpherePoint SpherePoint::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  return SpherePoint(v / n);
}

double lie_algebra_defect(const Matrix& x, int d) {
  require_dimension(d);
  if (x.rows() != d + 2 || x.cols() != d + 2) {
    throw Error(ErrorCode::kInvalidArgument, "algebra element must be (d+2)x(d+2)");
  }
  const Matrix eta = minkowski_metric(d);
  return (x.transpose() * eta + eta * x).norm();
}

bool lie_algebra_membership(const Matrix& x, int d) { return lie_algebra_defect(x, d) <= 1e-10; }

std::string to_string(GeneratorCase c) { return c == GeneratorCase::kCase1 ? "case1" : "case2"; }

GeneratorClassification classify_generator(const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "generator must be (d+2)x(d+2)");
  }
  const int d = static_cast<int>(x.rows()) - 2;
  if (!lie_algebra_membership(x, d)) {
    throw Error(ErrorCode::kInvalidArgument, "generator is not in so(1,d+1)");
  }
  GeneratorClassification out{GeneratorCase::kCase1, real_jordan_spectral(x), 0.0, 1e-9 * x.norm(),
                              false};
  const auto& p = out.jordan.parts;
  out.elliptic_norm = p.a_e.norm();
  out.kind = out.elliptic_norm <= out.tolerance ? GeneratorCase::kCase1 : GeneratorCase::kCase2;
  out.parts_in_algebra = lie_algebra_membership(p.a_n, d) && lie_algebra_membership(p.a_h, d) &&
                         lie_algebra_membership(p.a_e, d);
  return out;
}

SpherePoint conformal_act(const LorentzElement& g, const SpherePoint& x) {
  const double den = denominator(g, x);
  const Vector y = (g.c() + g.m() * x.coords()) / den;
  return SpherePoint::normalized(y);
}

double conformal_factor(const LorentzElement& g, const SpherePoint& x) {
  return 1.0 / denominator(g, x);
}

std::vector<double> sigma_pullback(const LorentzElement& g, const SphereFunction& f,
                                   const std::vector<SpherePoint>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(conformal_factor(g, x) * f(conformal_act(g, x)));
  return out;
}

SphereFunction sigma_pullback(const LorentzElement& g, SphereFunction f) {
  return [g, f = std::move(f)](const SpherePoint& x) {
    return conformal_factor(g, x) * f(conformal_act(g, x));
  };
}

std::vector<SpherePoint> fibonacci_sphere_points(int d, std::size_t count) {
  require_dimension(d);
  std::vector<SpherePoint> out;
  out.reserve(count);
  const double n = static_cast<double>(count);
  if (d == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
      out.push_back(SpherePoint::normalized(Vector{{std::cos(phi), std::sin(phi)}}));
    }
    return out;
  }
  if (d == 2) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double fi = static_cast<double>(i);
      const double z = 1.0 - (2.0 * fi + 1.0) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden_angle * fi;
      out.push_back(SpherePoint::normalized(Vector{{r * std::cos(phi), r * std::sin(phi), z}}));
    }
    return out;
  }
  // Additive recurrence with the generalized golden ratio of the needed
  // number of uniforms, then Box-Muller pairs.
  const int gaussians = d + 1;
  const int uniforms = gaussians + (gaussians % 2);
  double g = 2.0;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (uniforms + 1));
  std::vector<double> alpha(static_cast<std::size_t>(uniforms));
  for (int j = 0; j < uniforms; ++j) alpha[static_cast<std::size_t>(j)] = std::pow(1.0 / g, j + 1);
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(gaussians);
    for (int j = 0; j < gaussians; j += 2) {
      const auto u = [&](int k) {
        const double raw = 0.5 + static_cast<double>(i + 1) * alpha[static_cast<std::size_t>(k)];
        return std::max(raw - std::floor(raw), 1e-300);
      };
      const double radius = std::sqrt(-2.0 * std::log(u(j)));
      const double angle = 2.0 * std::numbers::pi * u(j + 1);
      v[j] = radius * std::cos(angle);
      if (j + 1 < gaussians) v[j + 1] = radius * std::sin(angle);
    }
    out.push_back(SpherePoint::normalized(v));
  }
  return out;
}

Matrix boost_generator(int d, int axis) {
  require_dimension(d);
  if (axis < 0 || axis > d) throw Error(ErrorCode::kInvalidArgument, "boost axis out of range");
  Matrix x = Matrix::Zero(d + 2, d + 2);
  x(0, axis + 1) = 1.0;
  x(axis + 1, 0) = 1.0;
  return x;
}

Matrix rotation_generator(int d, int i, int j) {
  require_dimension(d);
  if (i < 0 || j < 0 || i > d || j > d || i == j) {
    throw Error(ErrorCode::kInvalidArgument, "rotation plane out of range");
  }
  Matrix x = Matrix::Zero(d + 2, d + 2);
  x(i + 1, j + 1) = -1.0;
  x(j + 1, i + 1) = 1.0;
  return x;
}

Matrix null_rotation_generator(int d) { return boost_generator(d, 0) + rotation_generator(d, 0, 1); }

Vector orbit_limit_predict(const Matrix& a, const Vector& v) {
  if (v.size() != a.rows() || !(v.norm() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "orbit start must be a nonzero vector of matching size");
  }
  const RealJordanResult jordan = real_jordan_spectral(a);
  const double tau = 1e-9 * a.norm();
  if (jordan.parts.a_e.norm() > tau) {
    throw Error(ErrorCode::kComplexSpectrum,
                "||A_e|| = " + std::to_string(jordan.parts.a_e.norm()) + " exceeds tau_J");
  }
  std::vector<const SpectralCluster*> order;
  for (const auto& c : jordan.clusters) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const SpectralCluster* x, const SpectralCluster* y) {
    return x->eigenvalue.real() > y->eigenvalue.real();
  });
  const double scale = std::max(1.0, a.norm());
  const Matrix& nil = jordan.parts.a_n;
  for (const SpectralCluster* c : order) {
    const Vector v0 = c->projector * v;
    if (v0.norm() <= 1e-12 * v.norm()) continue;
    Vector top = v0;
    Vector next = nil * top;
    double bound = scale;
    while (next.norm() > 1e-10 * bound * v0.norm()) {
      top = next;
      next = nil * top;
      bound *= scale;
    }
    return top / top.norm();
  }
  throw Error(ErrorCode::kIllConditionedSpectrum, "start vector has no component in any eigenspace");
}

Vector orbit_limit_numeric(const Matrix& a, const Vector& v, double T, int steps) {
  if (!(T > 0.0) || steps < 1) throw Error(ErrorCode::kInvalidArgument, "orbit limit needs T > 0, steps >= 1");
  if (v.size() != a.rows() || !(v.norm() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "orbit start must be a nonzero vector of matching size");
  }
  const Matrix step = matrix_exp(a, T / steps);
  if (!step.allFinite()) throw Error(ErrorCode::kDomainUnderflow, "exp(A T / steps) overflowed; raise steps");
  Vector w = v / v.norm();
  for (int i = 0; i < steps; ++i) {
    w = step * w;
    const double n = w.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorCode::kDomainUnderflow, "orbit vector degenerated during renormalization");
    }
    w /= n;
  }
  return w;
}

double projective_fixed_point_residual(const Matrix& a, const Vector& u) {
  const Vector w = matrix_exp(a) * u;
  return (w / w.norm() - u).norm();
}

}  // namespace expflow
