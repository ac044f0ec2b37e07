#include "expflow/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "expflow/error.hpp"

namespace expflow::torus {
namespace {

constexpr double kPi = std::numbers::pi;

RealParameter integer_parameter(std::int64_t v) { return RealParameter(mpq_class(mpz_class(v))); }

bool is_zero(const RealParameter& x) {
  return x.is_exact() ? *x.exact() == 0 : x.value().is_zero();
}

// y - round(y) in [-1/2, 1/2], computed before rounding to double.
double signed_fraction(const RealParameter& y) {
  if (y.is_exact()) {
    const mpq_class& q = *y.exact();
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class nearest;
    mpz_fdiv_q(nearest.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return mpq_class(q - nearest).get_d();
  }
  mpz_class nearest;
  y.value().distance_to_nearest_integer(&nearest);
  return (y.value() - BigReal(nearest, y.precision_bits())).to_double();
}

bool is_integer(const RealParameter& y) {
  return y.is_exact() && y.exact()->get_den() == 1;
}

struct Evaluation {
  Complex value;
  // l k.theta is an integer and k.theta != 0, decided exactly.
  bool exact_zero = false;
};

Evaluation evaluate(const RealParameter& ell, const RealParameter& x) {
  const double l = ell.to_double();
  if (is_zero(x)) return {Complex(l, 0.0), false};
  const RealParameter y = ell * x;
  const double xd = x.to_double();
  if (std::abs(xd) < kSeriesThreshold && std::abs(2.0 * kPi * l * xd) <= 1.0) {
    // l * sum_j z^j / (j+1)!,  z = 2 pi i l x
    const Complex z(0.0, 2.0 * kPi * l * xd);
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int j = 1; j < 40; ++j) {
      term *= z / static_cast<double>(j + 1);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return {l * sum, false};
  }
  // (e^{2 pi i y} - 1) / (2 pi i x) = e^{i pi r} sin(pi r) / (pi x) with
  // r = y - round(y), which avoids cancellation near resonance.
  const double r = signed_fraction(y);
  const Complex value = std::polar(std::sin(kPi * r) / (kPi * xd), kPi * r);
  return {value, is_integer(y)};
}

bool resonant(const Evaluation& e, double tol) {
  return e.exact_zero || std::abs(e.value) <= tol;
}

double weight(const LatticeIndex& k) {
  double s = 1.0;
  for (const auto v : k) s += static_cast<double>(v) * static_cast<double>(v);
  return s;
}

}  // namespace

TorusFlow::TorusFlow(std::vector<RealParameter> theta) : theta_(std::move(theta)) {
  if (theta_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "torus flow needs d >= 1");
  }
  exact_ = std::all_of(theta_.begin(), theta_.end(),
                       [](const RealParameter& t) { return t.is_exact(); });
}

TorusFlow TorusFlow::from_doubles(const std::vector<double>& theta) {
  std::vector<RealParameter> out;
  for (const double t : theta) out.push_back(RealParameter::from_double(t));
  return TorusFlow(std::move(out));
}

bool TorusFlow::is_trivial() const {
  return std::all_of(theta_.begin(), theta_.end(), [](const RealParameter& t) { return is_zero(t); });
}

RealParameter TorusFlow::dot(const LatticeIndex& k) const {
  if (k.size() != theta_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "index " + format_index(k) + " does not match torus dimension " +
                    std::to_string(theta_.size()));
  }
  RealParameter sum;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] != 0) sum = sum + integer_parameter(k[i]) * theta_[i];
  }
  return sum;
}

Complex multiplier(const RealParameter& ell, const TorusFlow& flow, const LatticeIndex& k) {
  return evaluate(ell, flow.dot(k)).value;
}

Complex beta_multiplier(const RealParameter& s, const TorusFlow& flow, const LatticeIndex& k) {
  if (is_zero(s)) return 1.0;
  return multiplier(s, flow, k) / s.to_double();
}

Complex derivation_multiplier(const TorusFlow& flow, const LatticeIndex& k) {
  return Complex(0.0, 2.0 * kPi * flow.dot(k).to_double());
}

Complex translation_multiplier(const RealParameter& t, const TorusFlow& flow,
                               const LatticeIndex& k) {
  return std::polar(1.0, 2.0 * kPi * signed_fraction(t * flow.dot(k)));
}

LatticeSpectrum apply_alpha_chi(const LatticeSpectrum& spec, const RealParameter& ell,
                                const TorusFlow& flow) {
  return spec.transform(
      [&](const LatticeIndex& k, Complex x) {
        return x == Complex{} ? x : multiplier(ell, flow, k) * x;
      },
      spec.real_valued());
}

LatticeSpectrum apply_beta(const LatticeSpectrum& spec, const RealParameter& s,
                           const TorusFlow& flow) {
  if (is_zero(s)) return spec;
  return spec.transform(
      [&](const LatticeIndex& k, Complex x) {
        return x == Complex{} ? x : beta_multiplier(s, flow, k) * x;
      },
      spec.real_valued());
}

LatticeSpectrum apply_translation(const LatticeSpectrum& spec, const RealParameter& t,
                                  const TorusFlow& flow) {
  return spec.transform(
      [&](const LatticeIndex& k, Complex x) {
        return x == Complex{} ? x : translation_multiplier(t, flow, k) * x;
      },
      spec.real_valued());
}

LatticeSpectrum apply_derivation(const LatticeSpectrum& spec, const TorusFlow& flow) {
  return spec.transform(
      [&](const LatticeIndex& k, Complex x) {
        return x == Complex{} ? x : derivation_multiplier(flow, k) * x;
      },
      spec.real_valued());
}

LatticeSpectrum invert_alpha_chi(const LatticeSpectrum& spec, const RealParameter& ell,
                                 const TorusFlow& flow, double tol) {
  std::vector<Complex> inverse(spec.size());
  std::optional<std::pair<LatticeIndex, double>> offender;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const LatticeIndex k = spec.index_at(i);
    const Evaluation e = evaluate(ell, flow.dot(k));
    if (resonant(e, tol)) {
      LatticeIndex canonical = canonical_sign(k);
      if (!offender || shell_less(canonical, offender->first)) {
        offender = std::make_pair(std::move(canonical), std::abs(e.value));
      }
      continue;
    }
    inverse[i] = spec.at_offset(i) / e.value;
  }
  if (offender) throw ResonantMultiplierError(offender->first, offender->second);
  return LatticeSpectrum(spec.dimension(), spec.bandlimit(), std::move(inverse),
                         spec.real_valued());
}

double sobolev_norm(const LatticeSpectrum& spec, int order) {
  if (order < 0) throw Error(ErrorCode::kInvalidArgument, "Sobolev order must be >= 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double a = std::abs(spec.at_offset(i));
    if (a == 0.0) continue;
    sum += std::pow(weight(spec.index_at(i)), order) * a * a;
  }
  return std::sqrt(sum);
}

std::vector<LatticeIndex> kernel_indices(const RealParameter& ell, const TorusFlow& flow,
                                         int bandlimit, double tol) {
  if (bandlimit < 1) throw Error(ErrorCode::kInvalidArgument, "kernel_indices needs K >= 1");
  const bool exact = flow.is_exact() && ell.is_exact();
  std::vector<LatticeIndex> out;
  for (auto& k : band_indices(flow.dimension(), bandlimit)) {
    if (sup_norm(k) == 0) continue;
    const RealParameter x = flow.dot(k);
    if (exact) {
      if (!is_zero(x) && is_integer(ell * x)) out.push_back(std::move(k));
      continue;
    }
    if (std::abs(evaluate(ell, x).value) <= tol) out.push_back(std::move(k));
  }
  std::stable_sort(out.begin(), out.end(), shell_less);
  return out;
}

double embedding_defect(const RealParameter& ell, const TorusFlow& flow, int order,
                        const LatticeIndex& k) {
  const Evaluation e = evaluate(ell, flow.dot(k));
  if (e.exact_zero) return 0.0;
  return std::abs(e.value) * std::pow(2.0, order) * std::pow(weight(k), 0.5 * order);
}

std::optional<DefectWitness> embedding_defect_search(const RealParameter& ell,
                                                     const TorusFlow& flow, int order,
                                                     int bandlimit) {
  if (bandlimit < 1 || order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "embedding_defect_search needs K >= 1 and N >= 1");
  }
  std::vector<LatticeIndex> candidates;
  for (auto& k : band_indices(flow.dimension(), bandlimit)) {
    if (sup_norm(k) != 0 && canonical_sign(k) == k) candidates.push_back(std::move(k));
  }
  std::stable_sort(candidates.begin(), candidates.end(), shell_less);
  for (auto& k : candidates) {
    const double defect = embedding_defect(ell, flow, order, k);
    if (defect < 1.0) return DefectWitness{std::move(k), defect};
  }
  return std::nullopt;
}

std::vector<GrowthSample> ck_inverse_growth(const TorusFlow& flow, const RealParameter& ell,
                                            int order, const std::vector<LatticeIndex>& ks) {
  std::vector<GrowthSample> out;
  for (const auto& k : ks) {
    const int band = static_cast<int>(std::max<std::int64_t>(sup_norm(k), 1));
    const LatticeSpectrum unit = LatticeSpectrum::delta(flow.dimension(), band, k);
    const Evaluation e = evaluate(ell, flow.dot(k));
    if (resonant(e, 0.0)) throw ResonantMultiplierError(canonical_sign(k), std::abs(e.value));
    const LatticeSpectrum inverse =
        unit.transform([&](const LatticeIndex&, Complex x) { return x / e.value; }, false);
    out.push_back({k, sobolev_norm(inverse, order) / sobolev_norm(unit, order)});
  }
  return out;
}

double band_condition_number(const RealParameter& ell, const TorusFlow& flow, int bandlimit) {
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& k : band_indices(flow.dimension(), bandlimit)) {
    const Evaluation e = evaluate(ell, flow.dot(k));
    const double a = e.exact_zero ? 0.0 : std::abs(e.value);
    largest = std::max(largest, a);
    smallest = std::min(smallest, a);
  }
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return largest / smallest;
}

double weighted_inverse_bound(const RealParameter& ell, const TorusFlow& flow, int order,
                              int bandlimit) {
  double worst = 0.0;
  for (const auto& k : band_indices(flow.dimension(), bandlimit)) {
    const Evaluation e = evaluate(ell, flow.dot(k));
    if (resonant(e, 0.0)) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::pow(weight(k), -0.5 * order) / std::abs(e.value));
  }
  return worst;
}

MultiplierReport multiplier_report(const RealParameter& ell, const TorusFlow& flow,
                                   int bandlimit, double kernel_tol, int max_order) {
  MultiplierReport report;
  report.ell = ell.to_double();
  report.kernel_indices = kernel_indices(ell, flow, bandlimit, kernel_tol);
  report.min_abs_multiplier = std::numeric_limits<double>::infinity();
  for (const auto& k : band_indices(flow.dimension(), bandlimit)) {
    if (sup_norm(k) == 0 || canonical_sign(k) != k) continue;
    const Evaluation e = evaluate(ell, flow.dot(k));
    const double a = e.exact_zero ? 0.0 : std::abs(e.value);
    if (a < report.min_abs_multiplier ||
        (a == report.min_abs_multiplier && shell_less(k, report.min_index))) {
      report.min_abs_multiplier = a;
      report.min_index = k;
    }
  }
  for (int n = 1; n <= max_order; ++n) {
    if (auto w = embedding_defect_search(ell, flow, n, bandlimit)) {
      report.defect_witnesses.push_back({n, std::move(w->k), w->defect});
    }
  }
  return report;
}

}  // namespace expflow::torus
