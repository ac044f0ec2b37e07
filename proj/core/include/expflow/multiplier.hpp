#pragma once

// Fourier-multiplier realisation of the averaging operators of a linear flow
// sigma_t(z) = (exp(2 pi i t theta_j) z_j)_j on the d-torus.
//
//   alpha_chi[0,l] : x_k -> m_l(k) x_k,  m_l(k) = (e^{2 pi i l k.theta} - 1) / (2 pi i k.theta)
//   beta_s         : x_k -> m_s(k) / s x_k              (beta_0 = identity)
//
// with m_l(k) = l when k.theta = 0.  Under this 2 pi convention the
// generator D acts on the character e_k by 2 pi i k.theta.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "expflow/lattice_spectrum.hpp"
#include "expflow/real_parameter.hpp"

namespace expflow::torus {

using Complex = std::complex<double>;

class TorusFlow {
 public:
  explicit TorusFlow(std::vector<RealParameter> theta);
  static TorusFlow from_doubles(const std::vector<double>& theta);

  int dimension() const noexcept { return static_cast<int>(theta_.size()); }
  const std::vector<RealParameter>& theta() const noexcept { return theta_; }
  bool is_exact() const noexcept { return exact_; }
  bool is_trivial() const;

  // k.theta, exact when every theta_j is.
  RealParameter dot(const LatticeIndex& k) const;

 private:
  std::vector<RealParameter> theta_;
  bool exact_;
};

// Below this |k.theta| the multiplier is summed as a power series.
inline constexpr double kSeriesThreshold = 1e-4;

Complex multiplier(const RealParameter& ell, const TorusFlow& flow, const LatticeIndex& k);
// m_s(k) / s, the beta_s multiplier; 1 at s = 0.
Complex beta_multiplier(const RealParameter& s, const TorusFlow& flow, const LatticeIndex& k);
// 2 pi i k.theta
Complex derivation_multiplier(const TorusFlow& flow, const LatticeIndex& k);
// exp(2 pi i t k.theta), phase reduced mod 1 at full precision.
Complex translation_multiplier(const RealParameter& t, const TorusFlow& flow,
                               const LatticeIndex& k);

LatticeSpectrum apply_alpha_chi(const LatticeSpectrum& spec, const RealParameter& ell,
                                const TorusFlow& flow);
LatticeSpectrum apply_beta(const LatticeSpectrum& spec, const RealParameter& s,
                           const TorusFlow& flow);
LatticeSpectrum apply_translation(const LatticeSpectrum& spec, const RealParameter& t,
                                  const TorusFlow& flow);
LatticeSpectrum apply_derivation(const LatticeSpectrum& spec, const TorusFlow& flow);

// Divides by m_l(k) on the whole band.  Throws ResonantMultiplierError with
// the smallest offending index (sign-normalised, ordered by |k|_inf then
// lexicographically) if some band index has |m_l(k)| <= tol; exact inputs
// are tested for l k.theta in Z exactly.
LatticeSpectrum invert_alpha_chi(const LatticeSpectrum& spec, const RealParameter& ell,
                                 const TorusFlow& flow, double tol);

// (sum_k (1 + k.k)^N |x_k|^2)^{1/2}
double sobolev_norm(const LatticeSpectrum& spec, int order);

// Nonzero band indices with |m_l(k)| <= tol (both signs), ordered by |k|_inf
// then lexicographically.
std::vector<LatticeIndex> kernel_indices(const RealParameter& ell, const TorusFlow& flow,
                                         int bandlimit, double tol);

struct DefectWitness {
  LatticeIndex k;
  // |m_l(k)| 2^N (1 + k.k)^{N/2}; a witness has defect < 1.
  double defect;
};

double embedding_defect(const RealParameter& ell, const TorusFlow& flow, int order,
                        const LatticeIndex& k);
// First band index (sign-normalised, by |k|_inf then lexicographically) whose
// defect is < 1.
std::optional<DefectWitness> embedding_defect_search(const RealParameter& ell,
                                                     const TorusFlow& flow, int order,
                                                     int bandlimit);

struct GrowthSample {
  LatticeIndex k;
  double ratio;
};

// ||invert(delta_k)||_r / ||delta_k||_r for each k, in input order.
std::vector<GrowthSample> ck_inverse_growth(const TorusFlow& flow, const RealParameter& ell,
                                            int order, const std::vector<LatticeIndex>& ks);

// max |m_l(k)| / min |m_l(k)| over the band (infinite if some m vanishes).
double band_condition_number(const RealParameter& ell, const TorusFlow& flow, int bandlimit);
// max over the band of (1 + k.k)^{-N/2} / |m_l(k)|: the inverse measured
// from the order-N norm into the order-0 norm.
double weighted_inverse_bound(const RealParameter& ell, const TorusFlow& flow, int order,
                              int bandlimit);

struct MultiplierReport {
  double ell = 0.0;
  std::vector<LatticeIndex> kernel_indices;
  double min_abs_multiplier = 0.0;
  LatticeIndex min_index;
  struct Defect {
    int order;
    LatticeIndex k;
    double defect;
  };
  std::vector<Defect> defect_witnesses;
};

MultiplierReport multiplier_report(const RealParameter& ell, const TorusFlow& flow,
                                   int bandlimit, double kernel_tol, int max_order);

}  // namespace expflow::torus
