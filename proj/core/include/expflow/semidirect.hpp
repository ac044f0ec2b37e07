#pragma once

// The exponential (v, t) -> (beta_t v, t) of C^inf(M) x| R over the three
// function representations, the relation (alpha_t - 1)/t = D beta_t, and
// the witnesses that make exp fail to be injective or surjective.

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expflow/circle_flows.hpp"
#include "expflow/grid_function.hpp"
#include "expflow/lattice_spectrum.hpp"
#include "expflow/line_flows.hpp"
#include "expflow/matrix_exp.hpp"
#include "expflow/multiplier.hpp"

namespace expflow::semidirect {

enum class Representation { kTorus, kLine, kCircle };
std::string to_string(Representation r);

struct TorusLinear {
  torus::TorusFlow flow;
};

struct LineTranslation {
  line::Quadrature rule = line::Quadrature::kSimpson;
};

// phi' = Z(phi) on the circle; payloads are periodic samples on [0, 2 pi]
// (first and last node equal).  s-integrals use RK4 with at most
// max_step per step.
struct CircleFieldFlow {
  circle::TrigPolynomial field;
  double max_step = 1e-3;
};

using FlowDescriptor = std::variant<TorusLinear, LineTranslation, CircleFieldFlow>;
using Payload = std::variant<LatticeSpectrum, GridFunction>;

Representation representation_of(const FlowDescriptor& flow);

class SemidirectElement {
 public:
  // Checks the payload type against the tag.
  SemidirectElement(Representation repr, Payload v, RealParameter t);

  Representation representation() const noexcept { return repr_; }
  const Payload& payload() const noexcept { return v_; }
  const RealParameter& t() const noexcept { return t_; }

 private:
  Representation repr_;
  Payload v_;
  RealParameter t_;
};

// (beta_t v, t); beta_0 is the identity.
SemidirectElement exp_semidirect(const Payload& v, const RealParameter& t, const FlowDescriptor& flow);

// alpha_t v: v composed with the time-t flow.
Payload alpha(const Payload& v, const RealParameter& t, const FlowDescriptor& flow);

// || (alpha_t v - v)/t - D beta_t v ||_sup.  For grid payloads D beta_t v
// is computed as beta_t(Dv) from the supplied derivative v' (D = d/dx on
// the line, Z d/dphi on the circle).  t must be nonzero.
double relation_residual(const Payload& v, const RealParameter& t, const FlowDescriptor& flow,
                         const std::optional<GridFunction>& v_prime = std::nullopt);

// T / (n m), n = 1..n_max.
std::vector<double> periodic_singular_times(double period, int m, int n_max);
std::vector<RealParameter> periodic_singular_times(const RealParameter& period, int m, int n_max);

// (e^{i lambda T} - 1) / (i lambda); zero iff T in (2 pi / lambda) Z.
std::complex<double> eigenvalue_noninjectivity_witness(double lambda, double T);

// int e^{i p x} h(x) dx by composite Simpson over the window.
std::complex<double> eigenfunctional(const GridFunction& h, double p);
// lambda_p(beta_1 h); needs a support hint and a window starting at or
// before u - 1 (window-too-small otherwise).
std::complex<double> eigenfunctional_witness(const GridFunction& h, double p);

struct SingularTimeCheck {
  double t;
  LatticeIndex expected;              // index n predicted to resonate
  std::optional<LatticeIndex> raised; // index reported by invert_alpha_chi
  bool resonant() const { return raised.has_value() && *raised == expected; }
};

struct BmsWitness {
  int dimension;
  Matrix generator;
  bool case2;
  double lambda;                 // imaginary eigenvalue of the generator
  double period;                 // 2 pi / lambda
  double conformal_factor_defect;  // max |J - 1| over samples and times
  double orbit_circle_defect;      // distance of the orbit from its circle
  double phase_residual;           // max |f(g_t.x0) J - e^{i lambda t} f(x0)|
  std::vector<SingularTimeCheck> singular_times;
};

// Spatial rotation generator in the (0,1) plane; J checked over
// fibonacci_sphere_points(d, samples) at each of `times` equispaced t in
// [0, period]; singular times T/n for n = 1..n_max checked against the
// character flow theta = lambda / (2 pi).
BmsWitness bms_witness(int d, std::size_t samples = 500, int times = 64, int n_max = 5);

}  // namespace expflow::semidirect
