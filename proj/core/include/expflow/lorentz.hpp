#pragma once

// SO(1,d+1)_0 acting conformally on the unit sphere S^d, its cocycle, the
// generator classification and projective orbit limits of linear flows.

#include <complex>
#include <functional>
#include <vector>

#include "expflow/real_jordan.hpp"

namespace expflow {

// eta = diag(1, -1, ..., -1) of size d+2.
Matrix minkowski_metric(int d);

class LorentzElement {
 public:
  // Validates g^T eta g = eta, a > 0 and det g = 1.
  explicit LorentzElement(Matrix g);

  static LorentzElement identity(int d);
  // exp(t x) for x in so(1,d+1).
  static LorentzElement exponential(const Matrix& x, double t = 1.0);

  int dimension() const noexcept { return static_cast<int>(g_.rows()) - 2; }
  const Matrix& matrix() const noexcept { return g_; }

  double a() const { return g_(0, 0); }
  Vector b() const { return g_.row(0).tail(g_.cols() - 1).transpose(); }
  Vector c() const { return g_.col(0).tail(g_.rows() - 1); }
  Matrix m() const { return g_.bottomRightCorner(g_.rows() - 1, g_.cols() - 1); }

  LorentzElement operator*(const LorentzElement& other) const;
  LorentzElement inverse() const;

 private:
  Matrix g_;
};

class SpherePoint {
 public:
  // Requires | |x| - 1 | <= 1e-12.
  explicit SpherePoint(Vector x);
  static SpherePoint normalized(const Vector& v);

  int dimension() const noexcept { return static_cast<int>(x_.size()) - 1; }
  const Vector& coords() const noexcept { return x_; }
  double operator[](Eigen::Index i) const { return x_[i]; }

 private:
  Vector x_;
};

// ||x^T eta + eta x||.
double lie_algebra_defect(const Matrix& x, int d);
bool lie_algebra_membership(const Matrix& x, int d);

enum class GeneratorCase { kCase1, kCase2 };
std::string to_string(GeneratorCase c);

struct GeneratorClassification {
  GeneratorCase kind;
  RealJordanResult jordan;
  double elliptic_norm;       // ||x_e||
  double tolerance;           // tau_J
  bool parts_in_algebra;      // x_n, x_h, x_e all pass lie_algebra_membership
};

// Case 1 iff ||x_e|| <= tau_J. Throws invalid-argument off the algebra.
GeneratorClassification classify_generator(const Matrix& x);

// (c + m x) / (a + b.x); throws nonpositive-denominator.
SpherePoint conformal_act(const LorentzElement& g, const SpherePoint& x);
// J_g(x) = (a + b.x)^{-1} = |g*(1,x)|^{-1}.
double conformal_factor(const LorentzElement& g, const SpherePoint& x);

using SphereFunction = std::function<double(const SpherePoint&)>;

// x -> J_g(x) f(g.x), sampled on the given points or returned as a closure.
std::vector<double> sigma_pullback(const LorentzElement& g, const SphereFunction& f,
                                   const std::vector<SpherePoint>& points);
SphereFunction sigma_pullback(const LorentzElement& g, SphereFunction f);

// Deterministic quasi-uniform point set: equispaced for d = 1, the
// Fibonacci spiral for d = 2, an additive recurrence mapped through
// Box-Muller for d >= 3.
std::vector<SpherePoint> fibonacci_sphere_points(int d, std::size_t count);

// Generators. Spatial axes are numbered 0..d.
Matrix boost_generator(int d, int axis);
Matrix rotation_generator(int d, int i, int j);
// Nilpotent element with x^3 = 0 and x^2 != 0.
Matrix null_rotation_generator(int d);

// lim_{t->inf} e^{tA}v / |e^{tA}v| from the Jordan data. Throws
// complex-spectrum when ||A_e|| > tau_J.
Vector orbit_limit_predict(const Matrix& a, const Vector& v);
// e^{TA}v / |e^{TA}v| by repeated renormalized steps exp(A T / steps).
Vector orbit_limit_numeric(const Matrix& a, const Vector& v, double T, int steps = 64);
// | e^{A}u / |e^{A}u| - u |.
double projective_fixed_point_residual(const Matrix& a, const Vector& u);

}  // namespace expflow
