#include "expflow/circle_flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "expflow/error.hpp"

namespace expflow::circle {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double phi) {
  double out = std::fmod(phi, kTwoPi);
  if (out < 0.0) out += kTwoPi;
  if (out >= kTwoPi) out = 0.0;
  return out;
}

double bisect(const TrigPolynomial& z, double lo, double hi) {
  double f_lo = z(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-16 * kTwoPi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = z(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Newton on Z' from a local minimum of |Z|; empty if it wanders off.
std::optional<double> critical_point(const TrigPolynomial& z, double start, double radius) {
  double phi = start;
  for (int it = 0; it < 60; ++it) {
    const double d1 = z.derivative(phi, 1);
    const double d2 = z.derivative(phi, 2);
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    phi -= step;
    if (std::abs(phi - start) > radius) return std::nullopt;
    if (std::abs(step) < 1e-16) break;
  }
  return phi;
}

int multiplicity_at(const TrigPolynomial& z, double phi) {
  const double scale = std::max(z.sup_bound(), 1e-300);
  const double degree = std::max(1, z.degree());
  for (int j = 1; j <= 8; ++j) {
    if (std::abs(z.derivative(phi, j)) > 1e-4 * scale * std::pow(degree, j)) return j;
  }
  return 8;
}

}  // namespace

TrigPolynomial::TrigPolynomial(double constant, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!std::isfinite(constant_) || !std::all_of(cos_.begin(), cos_.end(), finite) ||
      !std::all_of(sin_.begin(), sin_.end(), finite)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite trigonometric coefficient");
  }
}

int TrigPolynomial::degree() const noexcept {
  return static_cast<int>(std::max(cos_.size(), sin_.size()));
}

double TrigPolynomial::derivative(double phi, int order) const {
  double sum = order == 0 ? constant_ : 0.0;
  const double quarter_turns = 0.5 * std::numbers::pi * order;
  for (std::size_t i = 0; i < cos_.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    sum += cos_[i] * std::pow(n, order) * std::cos(n * phi + quarter_turns);
  }
  for (std::size_t i = 0; i < sin_.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    sum += sin_[i] * std::pow(n, order) * std::sin(n * phi + quarter_turns);
  }
  return sum;
}

double TrigPolynomial::sup_bound() const {
  double sum = std::abs(constant_);
  for (const double c : cos_) sum += std::abs(c);
  for (const double s : sin_) sum += std::abs(s);
  return sum;
}

CircleField make_field(TrigPolynomial z, double root_tol) {
  CircleField field{std::move(z), {}};
  const TrigPolynomial& Z = field.z;
  const int samples = std::max(2048, 256 * Z.degree());
  const double step = kTwoPi / samples;
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) values[static_cast<std::size_t>(i)] = Z(step * i);

  std::vector<double> roots;
  for (int i = 0; i < samples; ++i) {
    const double here = values[static_cast<std::size_t>(i)];
    const double next = values[static_cast<std::size_t>((i + 1) % samples)];
    const double prev = values[static_cast<std::size_t>((i + samples - 1) % samples)];
    if (here == 0.0) {
      roots.push_back(step * i);
    } else if ((here < 0.0) != (next < 0.0) && next != 0.0) {
      roots.push_back(bisect(Z, step * i, step * (i + 1)));
    } else if (std::abs(here) <= std::abs(prev) && std::abs(here) < std::abs(next) &&
               (here < 0.0) == (prev < 0.0)) {
      // Touching zero without a sign change: even multiplicity.
      if (auto c = critical_point(Z, step * i, 2.0 * step)) roots.push_back(*c);
    }
  }
  for (double r : roots) {
    r = wrap(r);
    if (std::abs(Z(r)) > root_tol) continue;
    const bool duplicate = std::any_of(field.zero_set.begin(), field.zero_set.end(), [&](const Zero& q) {
      const double gap = std::abs(q.angle - r);
      return std::min(gap, kTwoPi - gap) < 1e-8;
    });
    if (!duplicate) field.zero_set.push_back({r, multiplicity_at(Z, r)});
  }
  std::sort(field.zero_set.begin(), field.zero_set.end(),
            [](const Zero& a, const Zero& b) { return a.angle < b.angle; });
  return field;
}

FlowCurve integrate_circle_flow(const CircleField& field, double theta1, double T, double dt,
                                double local_tol) {
  if (!(dt > 0.0) || !(T > 0.0) || !std::isfinite(theta1)) {
    throw Error(ErrorCode::kInvalidArgument, "circle flow needs T > 0, dt > 0, finite theta1");
  }
  const auto n = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
  const double h = T / static_cast<double>(n);
  const TrigPolynomial& Z = field.z;
  const auto rk4 = [&Z](double y, double step) {
    const double k1 = Z(y);
    const double k2 = Z(y + 0.5 * step * k1);
    const double k3 = Z(y + 0.5 * step * k2);
    const double k4 = Z(y + step * k3);
    return y + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  const auto march = [&](double step) {
    std::vector<double> path{theta1};
    double y = theta1;
    for (std::int64_t i = 0; i < n; ++i) {
      const double full = rk4(y, step);
      const double halves = rk4(rk4(y, 0.5 * step), 0.5 * step);
      const double estimate = std::abs(full - halves) / 15.0;
      if (estimate > local_tol) {
        std::ostringstream why;
        why << "local error " << estimate << " exceeds " << local_tol << " at t = "
            << step * static_cast<double>(i);
        throw Error(ErrorCode::kStepRejection, why.str());
      }
      y = halves;
      path.push_back(y);
    }
    return path;
  };
  const std::vector<double> forward = march(h);
  const std::vector<double> backward = march(-h);

  FlowCurve curve;
  curve.initial_angle = theta1;
  for (std::int64_t i = n; i >= 1; --i) {
    curve.t.push_back(-h * static_cast<double>(i));
    curve.phi.push_back(wrap(backward[static_cast<std::size_t>(i)]));
  }
  for (std::int64_t i = 0; i <= n; ++i) {
    curve.t.push_back(h * static_cast<double>(i));
    curve.phi.push_back(wrap(forward[static_cast<std::size_t>(i)]));
  }
  return curve;
}

GridFunction pullback_along_flow(const TrigPolynomial& f, const FlowCurve& curve) {
  if (curve.t.size() < 2) throw Error(ErrorCode::kInvalidArgument, "flow curve too short");
  std::vector<double> values;
  values.reserve(curve.phi.size());
  for (const double phi : curve.phi) values.push_back(f(phi));
  return GridFunction(curve.t.front(), curve.t[1] - curve.t[0], std::move(values));
}

double tail_oscillation(const GridFunction& g, double t0, double t1) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.x(i);
    if (t < t0 - 1e-9 * g.h() || t > t1 + 1e-9 * g.h()) continue;
    lo = std::min(lo, g[i]);
    hi = std::max(hi, g[i]);
  }
  if (lo > hi) throw Error(ErrorCode::kDomainUnderflow, "no nodes in the tail window");
  return hi - lo;
}

}  // namespace expflow::circle
