#include "expflow/semidirect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expflow/error.hpp"
#include "expflow/lorentz.hpp"

namespace expflow::semidirect {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const LatticeSpectrum& as_spectrum(const Payload& v) {
  if (const auto* s = std::get_if<LatticeSpectrum>(&v)) return *s;
  throw Error(ErrorCode::kInvalidArgument, "torus flows act on lattice spectra");
}

const GridFunction& as_grid(const Payload& v) {
  if (const auto* g = std::get_if<GridFunction>(&v)) return *g;
  throw Error(ErrorCode::kInvalidArgument, "line and circle flows act on grid functions");
}

GridFunction scaled(const GridFunction& f, double c) {
  std::vector<double> out = f.samples();
  for (double& y : out) y *= c;
  return GridFunction(f.a(), f.h(), std::move(out), f.support());
}

// f(x + t) on the nodes where the shifted node is known.
GridFunction shift_line(const GridFunction& f, double t) {
  const std::int64_t k = steps_of(t, f.h());
  std::vector<double> out;
  std::int64_t first = -1;
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(f.size()); ++i) {
    const auto y = f.node(i + k);
    if (!y) continue;
    if (first < 0) first = i;
    if (i != first + static_cast<std::int64_t>(out.size())) break;
    out.push_back(*y);
  }
  if (out.size() < 2) throw Error(ErrorCode::kDomainUnderflow, "shift leaves fewer than 2 nodes");
  std::optional<SupportInterval> hint;
  if (f.support() && first == 0 && out.size() == f.size()) {
    hint = SupportInterval{f.support()->u - t, f.support()->v - t};
    if (hint->u < f.a() || hint->v > f.b()) hint.reset();
  }
  return GridFunction(f.x(static_cast<std::size_t>(first)), f.h(), std::move(out), hint);
}

void require_periodic(const GridFunction& f) {
  const double n = (f.b() - f.a()) / f.h();
  if (std::abs(f.a()) > 1e-12 || std::abs(f.b() - kTwoPi) > 1e-9 || std::abs(n - std::round(n)) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "circle payloads are sampled on [0, 2 pi] with N + 1 nodes");
  }
}

// Periodic cubic Lagrange interpolation of samples on [0, 2 pi).
double periodic_value(const GridFunction& f, double phi) {
  const auto n = static_cast<std::int64_t>(f.size()) - 1;
  const double u = phi / f.h();
  const auto base = static_cast<std::int64_t>(std::floor(u));
  const double r = u - static_cast<double>(base);
  const auto at = [&](std::int64_t j) {
    return f[static_cast<std::size_t>(((j % n) + n) % n)];
  };
  const double w0 = -r * (r - 1.0) * (r - 2.0) / 6.0;
  const double w1 = (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0;
  const double w2 = -(r + 1.0) * r * (r - 2.0) / 2.0;
  const double w3 = (r + 1.0) * r * (r - 1.0) / 6.0;
  return w0 * at(base - 1) + w1 * at(base) + w2 * at(base + 1) + w3 * at(base + 2);
}

struct CircleSweep {
  std::vector<double> shifted;  // v(Phi_t(phi_j))
  std::vector<double> average;  // (1/t) int_0^t w(Phi_s(phi_j)) ds
};

// Follows every node along the field for time t, sampling v at the end and
// averaging w (Simpson in s).
CircleSweep sweep(const CircleFieldFlow& flow, const GridFunction& v, const GridFunction& w, double t) {
  const auto& z = flow.field;
  auto steps = static_cast<std::int64_t>(std::ceil(std::abs(t) / flow.max_step));
  steps = std::max<std::int64_t>(2, steps + (steps % 2));
  const double dt = t / static_cast<double>(steps);
  CircleSweep out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double y = v.x(i);
    double sum = periodic_value(w, y);
    for (std::int64_t j = 1; j <= steps; ++j) {
      const double k1 = z(y);
      const double k2 = z(y + 0.5 * dt * k1);
      const double k3 = z(y + 0.5 * dt * k2);
      const double k4 = z(y + dt * k3);
      y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double weight = j == steps ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      sum += weight * periodic_value(w, y);
    }
    out.shifted.push_back(periodic_value(v, y));
    out.average.push_back(sum / (3.0 * static_cast<double>(steps)));
  }
  return out;
}

GridFunction with_samples(const GridFunction& like, std::vector<double> samples) {
  return GridFunction(like.a(), like.h(), std::move(samples));
}

LatticeSpectrum difference(const LatticeSpectrum& a, const LatticeSpectrum& b) { return a + (-1.0) * b; }

}  // namespace

std::string to_string(Representation r) {
  switch (r) {
    case Representation::kTorus: return "torus-linear";
    case Representation::kLine: return "line-translation";
    case Representation::kCircle: return "circle-field";
  }
  return "unknown";
}

Representation representation_of(const FlowDescriptor& flow) {
  return std::visit(Overloaded{[](const TorusLinear&) { return Representation::kTorus; },
                               [](const LineTranslation&) { return Representation::kLine; },
                               [](const CircleFieldFlow&) { return Representation::kCircle; }},
                    flow);
}

SemidirectElement::SemidirectElement(Representation repr, Payload v, RealParameter t)
    : repr_(repr), v_(std::move(v)), t_(std::move(t)) {
  const bool spectral = std::holds_alternative<LatticeSpectrum>(v_);
  if (spectral != (repr_ == Representation::kTorus)) {
    throw Error(ErrorCode::kInvalidArgument,
                "payload does not match representation " + to_string(repr_));
  }
}

Payload alpha(const Payload& v, const RealParameter& t, const FlowDescriptor& flow) {
  return std::visit(
      Overloaded{
          [&](const TorusLinear& f) -> Payload {
            const auto& s = as_spectrum(v);
            if (s.dimension() != f.flow.dimension()) {
              throw Error(ErrorCode::kInvalidArgument, "spectrum and flow dimensions differ");
            }
            return torus::apply_translation(s, t, f.flow);
          },
          [&](const LineTranslation&) -> Payload { return shift_line(as_grid(v), t.to_double()); },
          [&](const CircleFieldFlow& f) -> Payload {
            const auto& g = as_grid(v);
            require_periodic(g);
            return with_samples(g, sweep(f, g, g, t.to_double()).shifted);
          }},
      flow);
}

SemidirectElement exp_semidirect(const Payload& v, const RealParameter& t, const FlowDescriptor& flow) {
  const Representation repr = representation_of(flow);
  if (t.to_double() == 0.0 && (!t.is_exact() || *t.exact() == 0)) {
    return SemidirectElement(repr, v, t);
  }
  Payload out = std::visit(
      Overloaded{
          [&](const TorusLinear& f) -> Payload {
            const auto& s = as_spectrum(v);
            if (s.dimension() != f.flow.dimension()) {
              throw Error(ErrorCode::kInvalidArgument, "spectrum and flow dimensions differ");
            }
            return torus::apply_beta(s, t, f.flow);
          },
          [&](const LineTranslation& f) -> Payload {
            return line::beta_s_line(as_grid(v), t.to_double(), f.rule);
          },
          [&](const CircleFieldFlow& f) -> Payload {
            const auto& g = as_grid(v);
            require_periodic(g);
            return with_samples(g, sweep(f, g, g, t.to_double()).average);
          }},
      flow);
  return SemidirectElement(repr, std::move(out), t);
}

double relation_residual(const Payload& v, const RealParameter& t, const FlowDescriptor& flow,
                         const std::optional<GridFunction>& v_prime) {
  const double td = t.to_double();
  if (td == 0.0) throw Error(ErrorCode::kInvalidArgument, "relation residual needs t != 0");
  return std::visit(
      Overloaded{
          [&](const TorusLinear& f) {
            const auto& s = as_spectrum(v);
            const LatticeSpectrum lhs =
                (1.0 / td) * difference(torus::apply_translation(s, t, f.flow), s);
            const LatticeSpectrum rhs = torus::apply_derivation(torus::apply_beta(s, t, f.flow), f.flow);
            return lhs.sup_distance(rhs);
          },
          [&](const LineTranslation& f) {
            if (!v_prime) throw Error(ErrorCode::kInvalidArgument, "line relation needs v'");
            const GridFunction lhs = scaled(line::delta_s(as_grid(v), td), 1.0 / td);
            const GridFunction rhs = line::beta_s_line(*v_prime, td, f.rule);
            return lhs.sup_distance(rhs);
          },
          [&](const CircleFieldFlow& f) {
            if (!v_prime) throw Error(ErrorCode::kInvalidArgument, "circle relation needs v'");
            const auto& g = as_grid(v);
            require_periodic(g);
            std::vector<double> dv = v_prime->samples();
            if (dv.size() != g.size()) throw Error(ErrorCode::kInvalidArgument, "v' grid differs from v");
            for (std::size_t i = 0; i < dv.size(); ++i) dv[i] *= f.field(g.x(i));
            const CircleSweep s = sweep(f, g, with_samples(g, std::move(dv)), td);
            double worst = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
              worst = std::max(worst, std::abs((s.shifted[i] - g[i]) / td - s.average[i]));
            }
            return worst;
          }},
      flow);
}

std::vector<double> periodic_singular_times(double period, int m, int n_max) {
  if (!(period > 0.0) || m == 0 || n_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "singular times need T > 0, m != 0, n_max >= 1");
  }
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(period / (static_cast<double>(n) * m));
  return out;
}

std::vector<RealParameter> periodic_singular_times(const RealParameter& period, int m, int n_max) {
  if (!(period.to_double() > 0.0) || m == 0 || n_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "singular times need T > 0, m != 0, n_max >= 1");
  }
  std::vector<RealParameter> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(period / RealParameter(mpq_class(n * m)));
  return out;
}

std::complex<double> eigenvalue_noninjectivity_witness(double lambda, double T) {
  if (lambda == 0.0 || !std::isfinite(lambda) || !std::isfinite(T)) {
    throw Error(ErrorCode::kInvalidArgument, "eigenvalue witness needs finite lambda != 0");
  }
  const double half = 0.5 * lambda * T;
  return 2.0 * std::sin(half) / lambda * std::polar(1.0, half);
}

std::complex<double> eigenfunctional(const GridFunction& h, double p) {
  std::vector<double> re;
  std::vector<double> im;
  for (std::size_t i = 0; i < h.size(); ++i) {
    re.push_back(std::cos(p * h.x(i)) * h[i]);
    im.push_back(std::sin(p * h.x(i)) * h[i]);
  }
  return {line::integrate(GridFunction(h.a(), h.h(), std::move(re))),
          line::integrate(GridFunction(h.a(), h.h(), std::move(im)))};
}

std::complex<double> eigenfunctional_witness(const GridFunction& h, double p) {
  if (!h.support()) throw Error(ErrorCode::kMissingSupportHint, "eigenfunctional witness needs supp h");
  const SupportInterval s = *h.support();
  if (h.a() > s.u - 1.0 + 1e-9 * h.h()) {
    throw Error(ErrorCode::kWindowTooSmall, "window must start at or before u - 1");
  }
  return eigenfunctional(line::beta_s_line(h, 1.0), p);
}

BmsWitness bms_witness(int d, std::size_t samples, int times, int n_max) {
  if (d < 1 || samples == 0 || times < 1 || n_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bms witness needs d >= 1 and positive counts");
  }
  BmsWitness w{};
  w.dimension = d;
  w.generator = rotation_generator(d, 0, 1);
  const GeneratorClassification cls = classify_generator(w.generator);
  w.case2 = cls.kind == GeneratorCase::kCase2;
  for (const auto& c : cls.jordan.clusters) {
    if (c.conjugate_pair) w.lambda = std::max(w.lambda, c.eigenvalue.imag());
  }
  if (!(w.lambda > 0.0)) throw Error(ErrorCode::kComplexSpectrum, "rotation generator has no imaginary eigenvalue");
  w.period = kTwoPi / w.lambda;

  const std::vector<SpherePoint> points = fibonacci_sphere_points(d, samples);
  const SpherePoint x0 = SpherePoint::normalized(Vector::Ones(d + 1));
  const std::complex<double> f0(x0[0], x0[1]);
  const double r0 = std::hypot(x0[0], x0[1]);
  for (int j = 0; j <= times; ++j) {
    const double t = w.period * static_cast<double>(j) / static_cast<double>(times);
    const LorentzElement g = LorentzElement::exponential(w.generator, t);
    for (const auto& p : points) {
      w.conformal_factor_defect = std::max(w.conformal_factor_defect, std::abs(conformal_factor(g, p) - 1.0));
    }
    const SpherePoint y = conformal_act(g, x0);
    double circle = std::abs(std::hypot(y[0], y[1]) - r0);
    for (int i = 2; i <= d; ++i) circle = std::max(circle, std::abs(y[i] - x0[i]));
    w.orbit_circle_defect = std::max(w.orbit_circle_defect, circle);
    const std::complex<double> pulled = conformal_factor(g, x0) * std::complex<double>(y[0], y[1]);
    w.phase_residual = std::max(w.phase_residual, std::abs(pulled - std::polar(1.0, w.lambda * t) * f0));
  }

  // The character e_k of the orbit circle has D e_k = i k lambda, i.e.
  // theta = lambda / (2 pi) in the multiplier convention.
  const RealParameter two_pi = parse_real_parameter("2*pi");
  const RealParameter lambda = RealParameter::from_double(w.lambda);
  const torus::TorusFlow flow({lambda / two_pi});
  const std::vector<RealParameter> schedule = periodic_singular_times(two_pi / lambda, 1, n_max);
  for (int n = 1; n <= n_max; ++n) {
    const RealParameter& t = schedule[static_cast<std::size_t>(n - 1)];
    SingularTimeCheck check{t.to_double(), LatticeIndex{n}, std::nullopt};
    const LatticeSpectrum band = LatticeSpectrum::constant(1, n, 1.0);
    try {
      torus::invert_alpha_chi(band, t, flow, 1e-12);
    } catch (const ResonantMultiplierError& e) {
      check.raised = e.index();
    }
    w.singular_times.push_back(std::move(check));
  }
  return w;
}

}  // namespace expflow::semidirect
