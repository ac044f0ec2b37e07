#pragma once

// Difference and averaging operators of the translation flow on the line,
//   Delta_s f(x) = f(x + s) - f(x),   beta_s f(x) = int_0^1 f(x + s t) dt,
// on grid functions, with the explicit preimages obtained by summing shifted
// copies of a compactly supported right-hand side.

#include "expflow/grid_function.hpp"

namespace expflow::line {

enum class ShiftMode { kExact, kInterpolate };
enum class Quadrature { kSimpson, kGauss7 };

// Pointwise f(x + s) - f(x).  Without a support hint the result lives on
// the nodes whose shift stays in the window; with one it is zero extended.
// kInterpolate accepts shifts off the grid (cubic interpolation, O(h^4)).
GridFunction delta_s(const GridFunction& f, double s, ShiftMode mode = ShiftMode::kExact);

// int_0^1 f(x + s t) dt by composite quadrature along grid nodes; s must be
// a multiple of h.  beta_0 is the identity.
GridFunction beta_s_line(const GridFunction& f, double s,
                         Quadrature rule = Quadrature::kSimpson);

// sum_k g(x - k s) on the nodes of [0, s]; requires a support hint and a
// grid containing 0.
GridFunction periodize(const GridFunction& g, double s);

// f(x) = sum_{k>=1} g(x - k s) on [window_a, window_b] (same h, aligned).
// The window must satisfy window_a <= u and window_b >= v + s for the
// support [u, v] of g.
GridFunction preimage_delta(const GridFunction& g, double s, double window_a, double window_b);
// h(x) = s sum_{k>=1} g'(x - k s); g_prime is the supplied derivative of g.
GridFunction preimage_beta(const GridFunction& g_prime, double s, double window_a,
                           double window_b);

// sup |Delta_s f - g| over the common nodes.
double delta_residual(const GridFunction& f, const GridFunction& g, double s);
// sup |beta_s h - g| over the common nodes.
double beta_residual(const GridFunction& h, const GridFunction& g, double s,
                     Quadrature rule = Quadrature::kSimpson);

// || s sum_k g'(. - k s) ||_inf over one period.
double obstruction_per(const GridFunction& g_prime, double s);

// Composite Simpson (3/8 on a trailing odd panel) over all nodes.
double integrate(const GridFunction& f);

}  // namespace expflow::line
