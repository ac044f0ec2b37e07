#include "expflow/line_flows.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "expflow/error.hpp"

namespace expflow::line {
namespace {

// Linear functional sum_o w[o] f(node + first + o).
struct Stencil {
  std::int64_t first = 0;
  std::vector<double> weights;
};

std::optional<SupportInterval> clipped_hint(const GridFunction& f, double lo_shift,
                                            double hi_shift, double a, double b) {
  if (!f.support()) return std::nullopt;
  const SupportInterval hull{f.support()->u + lo_shift, f.support()->v + hi_shift};
  if (hull.u < a || hull.v > b) return std::nullopt;
  return hull;
}

// Applies the stencil at every node of f and keeps the contiguous run of
// nodes where all inputs are defined.
GridFunction apply_stencil(const GridFunction& f, const Stencil& stencil, double scale,
                           double hint_lo, double hint_hi, const char* op) {
  const auto n = static_cast<std::int64_t>(f.size());
  std::vector<double> values;
  std::int64_t first_valid = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    double sum = 0.0;
    bool defined = true;
    for (std::size_t o = 0; o < stencil.weights.size() && defined; ++o) {
      const auto v = f.node(i + stencil.first + static_cast<std::int64_t>(o));
      if (!v) {
        defined = false;
      } else {
        sum += stencil.weights[o] * *v;
      }
    }
    if (!defined) {
      if (first_valid >= 0) break;
      continue;
    }
    if (first_valid < 0) first_valid = i;
    values.push_back(scale * sum);
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::kDomainUnderflow,
                std::string(op) + " leaves fewer than 2 nodes in the window [" +
                    std::to_string(f.a()) + ", " + std::to_string(f.b()) + "]");
  }
  const double a = f.x(static_cast<std::size_t>(first_valid));
  const double b = a + f.h() * static_cast<double>(values.size() - 1);
  auto hint = clipped_hint(f, hint_lo, hint_hi, a, b);
  return GridFunction(a, f.h(), std::move(values), hint);
}

// Weights of composite Simpson over panels 0..m (3/8 on a trailing odd
// triple, a cubic rule on a single panel), in units of h.
Stencil simpson_weights(std::int64_t m) {
  Stencil st;
  if (m == 1) {
    st.first = -1;
    st.weights = {-1.0 / 24.0, 13.0 / 24.0, 13.0 / 24.0, -1.0 / 24.0};
    return st;
  }
  st.weights.assign(static_cast<std::size_t>(m + 1), 0.0);
  const std::int64_t simpson_panels = (m % 2 == 0) ? m : m - 3;
  for (std::int64_t p = 0; p < simpson_panels; p += 2) {
    st.weights[static_cast<std::size_t>(p)] += 1.0 / 3.0;
    st.weights[static_cast<std::size_t>(p + 1)] += 4.0 / 3.0;
    st.weights[static_cast<std::size_t>(p + 2)] += 1.0 / 3.0;
  }
  if (simpson_panels != m) {
    const auto p = static_cast<std::size_t>(simpson_panels);
    st.weights[p] += 3.0 / 8.0;
    st.weights[p + 1] += 9.0 / 8.0;
    st.weights[p + 2] += 9.0 / 8.0;
    st.weights[p + 3] += 3.0 / 8.0;
  }
  return st;
}

// Seven-point Gauss-Legendre per cell, cell values from the six-point
// Lagrange interpolant on nodes -2..3 around the cell.
Stencil gauss7_weights(std::int64_t m) {
  constexpr std::array<double, 7> kNodes = {-0.9491079123427585, -0.7415311855993945,
                                            -0.4058451513773972, 0.0,
                                            0.4058451513773972,  0.7415311855993945,
                                            0.9491079123427585};
  constexpr std::array<double, 7> kWeights = {0.1294849661688697, 0.2797053914892766,
                                              0.3818300505051189, 0.4179591836734694,
                                              0.3818300505051189, 0.2797053914892766,
                                              0.1294849661688697};
  Stencil st;
  st.first = -2;
  st.weights.assign(static_cast<std::size_t>(m + 5), 0.0);
  for (std::int64_t cell = 0; cell < m; ++cell) {
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const double t = 0.5 * (kNodes[q] + 1.0);
      const double w = 0.5 * kWeights[q];
      for (int j = -2; j <= 3; ++j) {
        double lagrange = 1.0;
        for (int l = -2; l <= 3; ++l) {
          if (l != j) lagrange *= (t - l) / static_cast<double>(j - l);
        }
        st.weights[static_cast<std::size_t>(cell + j + 2)] += w * lagrange;
      }
    }
  }
  return st;
}

double cubic_at(const GridFunction& f, std::int64_t j, double t, bool& defined) {
  // Lagrange cubic through nodes j-1..j+2 evaluated at j + t.
  double sum = 0.0;
  for (int p = -1; p <= 2; ++p) {
    const auto v = f.node(j + p);
    if (!v) {
      defined = false;
      return 0.0;
    }
    double lagrange = 1.0;
    for (int l = -1; l <= 2; ++l) {
      if (l != p) lagrange *= (t - l) / static_cast<double>(p - l);
    }
    sum += lagrange * *v;
  }
  return sum;
}

GridFunction delta_interpolated(const GridFunction& f, double s) {
  const double shift = s / f.h();
  const auto whole = static_cast<std::int64_t>(std::floor(shift));
  const double t = shift - static_cast<double>(whole);
  const auto n = static_cast<std::int64_t>(f.size());
  std::vector<double> values;
  std::int64_t first_valid = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    bool defined = true;
    const double shifted = cubic_at(f, i + whole, t, defined);
    if (!defined) {
      if (first_valid >= 0) break;
      continue;
    }
    if (first_valid < 0) first_valid = i;
    values.push_back(shifted - f[static_cast<std::size_t>(i)]);
  }
  if (values.size() < 2) {
    throw Error(ErrorCode::kDomainUnderflow, "interpolated shift leaves the window");
  }
  const double a = f.x(static_cast<std::size_t>(first_valid));
  const double b = a + f.h() * static_cast<double>(values.size() - 1);
  const double reach = 2.0 * f.h();
  auto hint = clipped_hint(f, std::min(0.0, -s) - reach, std::max(0.0, -s) + reach, a, b);
  return GridFunction(a, f.h(), std::move(values), hint);
}

std::int64_t positive_steps(double s, double h) {
  const std::int64_t m = steps_of(s, h);
  if (m <= 0) throw Error(ErrorCode::kInvalidArgument, "period s must be positive");
  return m;
}

const SupportInterval& require_support(const GridFunction& g, const char* op) {
  if (!g.support()) {
    throw Error(ErrorCode::kMissingSupportHint,
                std::string(op) + " needs a compactly supported input (support hint)");
  }
  return *g.support();
}

GridFunction shifted_sum(const GridFunction& g, double s, double window_a, double window_b,
                         double scale, const char* op) {
  const SupportInterval& support = require_support(g, op);
  const std::int64_t m = positive_steps(s, g.h());
  const double slack = 1e-9 * g.h();
  if (window_a > support.u + slack || window_b < support.v + s - slack) {
    throw Error(ErrorCode::kWindowTooSmall,
                std::string(op) + " window [" + std::to_string(window_a) + ", " +
                    std::to_string(window_b) + "] must contain [u, v + s] = [" +
                    std::to_string(support.u) + ", " + std::to_string(support.v + s) + "]");
  }
  const std::int64_t offset = steps_of(window_a - g.a(), g.h());
  const std::int64_t count = steps_of(window_b - window_a, g.h()) + 1;
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<double> values(static_cast<std::size_t>(count), 0.0);
  for (std::int64_t p = 0; p < count; ++p) {
    double sum = 0.0;
    for (std::int64_t idx = offset + p - m; idx >= 0; idx -= m) {
      if (idx < n) sum += g[static_cast<std::size_t>(idx)];
    }
    values[static_cast<std::size_t>(p)] = scale * sum;
  }
  return GridFunction(window_a, g.h(), std::move(values));
}

}  // namespace

GridFunction delta_s(const GridFunction& f, double s, ShiftMode mode) {
  if (mode == ShiftMode::kInterpolate) {
    const double ratio = s / f.h();
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, std::abs(ratio))) {
      return delta_interpolated(f, s);
    }
  }
  const std::int64_t m = steps_of(s, f.h());
  Stencil st;
  if (m == 0) {
    return GridFunction(f.a(), f.h(), std::vector<double>(f.size(), 0.0), f.support());
  }
  // f(x + s) - f(x) as a two-point stencil.
  st.first = std::min<std::int64_t>(0, m);
  st.weights.assign(static_cast<std::size_t>(std::abs(m) + 1), 0.0);
  st.weights[static_cast<std::size_t>(m - st.first)] += 1.0;
  st.weights[static_cast<std::size_t>(-st.first)] -= 1.0;
  return apply_stencil(f, st, 1.0, std::min(0.0, -s), std::max(0.0, -s), "delta_s");
}

GridFunction beta_s_line(const GridFunction& f, double s, Quadrature rule) {
  const std::int64_t m = steps_of(s, f.h());
  if (m == 0) return f;
  const std::int64_t steps = std::abs(m);
  Stencil st = rule == Quadrature::kSimpson ? simpson_weights(steps) : gauss7_weights(steps);
  // Integrate over [x + min(0, s), x + max(0, s)].
  st.first += std::min<std::int64_t>(0, m);
  const double reach = rule == Quadrature::kSimpson ? (steps == 1 ? 1.0 : 0.0) : 2.0;
  const double lo = std::min(0.0, -s) - reach * f.h();
  const double hi = std::max(0.0, -s) + reach * f.h();
  return apply_stencil(f, st, 1.0 / static_cast<double>(steps), lo, hi, "beta_s");
}

GridFunction periodize(const GridFunction& g, double s) {
  require_support(g, "periodize");
  const std::int64_t m = positive_steps(s, g.h());
  const std::int64_t zero = steps_of(-g.a(), g.h());
  const auto n = static_cast<std::int64_t>(g.size());
  std::vector<double> values(static_cast<std::size_t>(m + 1), 0.0);
  for (std::int64_t p = 0; p <= m; ++p) {
    const std::int64_t base = zero + p;
    // Nodes base - k m inside [0, n).
    std::int64_t idx = base % m;
    if (idx < 0) idx += m;
    double sum = 0.0;
    for (; idx < n; idx += m) sum += g[static_cast<std::size_t>(idx)];
    values[static_cast<std::size_t>(p)] = sum;
  }
  return GridFunction(0.0, g.h(), std::move(values));
}

GridFunction preimage_delta(const GridFunction& g, double s, double window_a, double window_b) {
  return shifted_sum(g, s, window_a, window_b, 1.0, "preimage_delta");
}

GridFunction preimage_beta(const GridFunction& g_prime, double s, double window_a,
                           double window_b) {
  return shifted_sum(g_prime, s, window_a, window_b, s, "preimage_beta");
}

double delta_residual(const GridFunction& f, const GridFunction& g, double s) {
  return delta_s(f, s).sup_distance(g);
}

double beta_residual(const GridFunction& h, const GridFunction& g, double s, Quadrature rule) {
  return beta_s_line(h, s, rule).sup_distance(g);
}

double obstruction_per(const GridFunction& g_prime, double s) {
  return s * periodize(g_prime, s).sup_norm();
}

double integrate(const GridFunction& f) {
  const auto panels = static_cast<std::int64_t>(f.size()) - 1;
  if (panels == 1) return 0.5 * f.h() * (f[0] + f[1]);
  const Stencil st = simpson_weights(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i < st.weights.size(); ++i) sum += st.weights[i] * f[i];
  return f.h() * sum;
}

}  // namespace expflow::line
