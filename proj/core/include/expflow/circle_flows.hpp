#pragma once

// Flows of a vector field phi' = Z(phi) on the circle, with Z a real
// trigonometric polynomial, and pullbacks of functions along an orbit.

#include <vector>

#include "expflow/grid_function.hpp"

namespace expflow::circle {

// Z(phi) = c_0 + sum_{n>=1} (a_n cos n phi + b_n sin n phi).
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPolynomial constant_field(double c) { return TrigPolynomial(c, {}, {}); }

  double constant() const noexcept { return constant_; }
  const std::vector<double>& cos_coeffs() const noexcept { return cos_; }
  const std::vector<double>& sin_coeffs() const noexcept { return sin_; }
  int degree() const noexcept;

  double operator()(double phi) const { return derivative(phi, 0); }
  // order-th derivative in phi.
  double derivative(double phi, int order) const;
  double sup_bound() const;

 private:
  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

struct Zero {
  double angle;
  int multiplicity;
};

struct CircleField {
  TrigPolynomial z;
  std::vector<Zero> zero_set;
};

// Zeros of Z in [0, 2 pi) with multiplicities, |Z| <= root_tol at each.
CircleField make_field(TrigPolynomial z, double root_tol = 1e-10);

struct FlowCurve {
  std::vector<double> t;
  // Angles reduced to [0, 2 pi).
  std::vector<double> phi;
  double initial_angle;
};

// Classical RK4 on [-T, T] with step dt (rounded so that T/dt is integral),
// phi(0) = theta1.  Each step is checked against two half steps; a local
// error estimate above local_tol throws step-rejection.
FlowCurve integrate_circle_flow(const CircleField& field, double theta1, double T, double dt,
                                double local_tol = 1e-9);

// t -> f(gamma(t)) on the curve's uniform t grid.
GridFunction pullback_along_flow(const TrigPolynomial& f, const FlowCurve& curve);

// max - min of g over nodes with t in [t0, t1].
double tail_oscillation(const GridFunction& g, double t0, double t1);

}  // namespace expflow::circle
