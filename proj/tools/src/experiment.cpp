#include "expflow_cli/experiment.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "expflow/circle_flows.hpp"
#include "expflow/diophantine.hpp"
#include "expflow/line_flows.hpp"
#include "expflow/lorentz.hpp"
#include "expflow/multiplier.hpp"
#include "expflow/random.hpp"
#include "expflow/real_jordan.hpp"
#include "expflow/semidirect.hpp"

namespace expflow::cli {
namespace {

constexpr std::array<std::pair<Command, const char*>, 11> kCommands = {{
    {Command::kClassify, "classify"},
    {Command::kRelation, "relation"},
    {Command::kDiscrepancy, "discrepancy"},
    {Command::kTorus, "torus"},
    {Command::kLine, "line"},
    {Command::kCircle, "circle"},
    {Command::kJordan, "jordan"},
    {Command::kSphere, "sphere"},
    {Command::kExpmap, "expmap"},
    {Command::kSingularTimes, "singular-times"},
    {Command::kBmsWitness, "bms-witness"},
}};

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); }

template <class T>
T param(const Json& p, const char* key, T fallback) {
  if (!p.contains(key)) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("parameter '") + key + "': " + e.what());
  }
}

template <class T>
T required(const Json& p, const char* key) {
  if (!p.contains(key)) bad_config(std::string("missing parameter '") + key + "'");
  return param<T>(p, key, T{});
}

std::string parameter_text(const Json& v, const char* key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return io::format_double(v.get<double>());
  bad_config(std::string("parameter '") + key + "' must be a number or expression string");
}

RealParameter real_param(const Json& p, const char* key, const std::string& fallback) {
  const std::string text = p.contains(key) ? parameter_text(p.at(key), key) : fallback;
  try {
    return parse_real_parameter(text);
  } catch (const Error& e) {
    bad_config(std::string("parameter '") + key + "': " + e.what());
  }
}

std::vector<RealParameter> real_list(const Json& p, const char* key, const std::vector<std::string>& fallback) {
  std::vector<std::string> texts = fallback;
  if (p.contains(key)) {
    const Json& v = p.at(key);
    texts.clear();
    if (v.is_array()) {
      for (const auto& item : v) texts.push_back(parameter_text(item, key));
    } else {
      texts.push_back(parameter_text(v, key));
    }
  }
  if (texts.empty()) bad_config(std::string("parameter '") + key + "' is empty");
  std::vector<RealParameter> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_real_parameter(t));
    } catch (const Error& e) {
      bad_config(std::string("parameter '") + key + "': " + e.what());
    }
  }
  return out;
}

circle::TrigPolynomial trig_param(const Json& p, const char* key, const circle::TrigPolynomial& fallback) {
  if (!p.contains(key)) return fallback;
  const Json& v = p.at(key);
  return circle::TrigPolynomial(param<double>(v, "constant", 0.0),
                                param<std::vector<double>>(v, "cos", {}),
                                param<std::vector<double>>(v, "sin", {}));
}

Json index_json(const LatticeIndex& k) { return Json(k); }

class Checks {
 public:
  explicit Checks(std::vector<CheckRecord>& out) : out_(out) {}

  void at_most(const std::string& name, double value, double tol) {
    out_.push_back({name, value <= tol ? CheckStatus::kPass : CheckStatus::kFail, value, tol, "<="});
  }
  void at_least(const std::string& name, double value, double tol) {
    out_.push_back({name, value >= tol ? CheckStatus::kPass : CheckStatus::kFail, value, tol, ">="});
  }
  void expect(const std::string& name, bool ok) { at_least(name, ok ? 1.0 : 0.0, 1.0); }
  void report(const std::string& name, double value) {
    out_.push_back({name, CheckStatus::kReportOnly, value, 0.0, ""});
  }

 private:
  std::vector<CheckRecord>& out_;
};

// ---------------------------------------------------------------- classify

void run_classify(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const RealParameter x = real_param(c.params, "x", "");
  diophantine::ClassifyOptions options;
  options.max_terms = param<std::size_t>(c.params, "max_terms", options.max_terms);
  options.evidence_threshold = param<double>(c.params, "threshold", options.evidence_threshold);
  options.evidence_min_denominator = param<long>(c.params, "min_denominator", 10000);
  const auto report = diophantine::classify(x, options);

  r.results["classification"] = diophantine::to_string(report.classification);
  r.results["terms_used"] = report.terms_used;
  if (report.certified_exponent) r.results["certified_exponent"] = *report.certified_exponent;
  if (report.exponent_estimate) {
    r.results["exponent_estimate"] = *report.exponent_estimate;
    checks.report("exponent_estimate", *report.exponent_estimate);
  }
  if (report.rational) {
    r.results["rational"] = {{"p", report.rational->p.get_str()}, {"q", report.rational->q.get_str()}};
  }
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    const double log10_error =
        w.error.is_zero() ? -INFINITY : w.error.abs().log().to_double() / std::numbers::ln10;
    witnesses.push_back({{"p", w.p.get_str()}, {"q", w.q.get_str()}, {"log10_error", log10_error}});
  }
  r.results["witnesses"] = std::move(witnesses);
}

// ---------------------------------------------------------------- relation

void run_relation(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const auto theta = real_list(c.params, "theta", {});
  const auto bound = param<std::int64_t>(c.params, "bound", 20);
  const double tol = param<double>(c.params, "tol", 1e-12);
  const auto found = diophantine::integer_relation_search(theta, bound, tol);
  r.results["found"] = found.has_value();
  r.results["bound"] = bound;
  if (found) {
    r.results["k"] = found->k;
    r.results["target"] = found->target.get_str();
    r.results["residual"] = found->residual.to_double();
    checks.report("relation_residual", found->residual.to_double());
  }
}

// ---------------------------------------------------------------- discrepancy

void run_discrepancy(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const RealParameter s = real_param(c.params, "s", "");
  const auto n = param<std::int64_t>(c.params, "n", 1000);
  if (n < 1) bad_config("discrepancy needs n >= 1");
  const double d = diophantine::star_discrepancy(s, n);
  r.results["star_discrepancy"] = d;
  r.results["n"] = n;
  // Any N points have D*_N >= 1/(2N).
  checks.at_least("discrepancy_lower_bound", d, 0.5 / static_cast<double>(n));
  checks.report("star_discrepancy", d);
}

// ---------------------------------------------------------------- torus

std::vector<LatticeIndex> fibonacci_indices(int dimension, int bandlimit) {
  std::vector<LatticeIndex> out;
  std::int64_t a = 1;
  std::int64_t b = 2;
  while (b <= bandlimit) {
    LatticeIndex k(static_cast<std::size_t>(dimension), 0);
    k[0] = b;
    out.push_back(std::move(k));
    const std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return out;
}

void run_torus(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const torus::TorusFlow flow(real_list(c.params, "theta", {"phi"}));
  const RealParameter ell = real_param(c.params, "ell", "1");
  const int K = param<int>(c.params, "K", 16);
  const int order = param<int>(c.params, "order", 3);
  const double tol = param<double>(c.params, "tol", 1e-12);
  if (K < 1 || order < 0) bad_config("torus needs K >= 1 and order >= 0");

  const auto kernel = torus::kernel_indices(ell, flow, K, tol);
  Json kernel_json = Json::array();
  for (const auto& k : kernel) kernel_json.push_back(index_json(k));
  r.results["kernel"] = std::move(kernel_json);
  checks.report("kernel_size", static_cast<double>(kernel.size()));

  Rng rng = Rng(c.seed).split(1);
  const LatticeSpectrum v = random_spectrum(rng, flow.dimension(), K, false);
  try {
    const LatticeSpectrum w = torus::invert_alpha_chi(torus::apply_alpha_chi(v, ell, flow), ell, flow, tol);
    const double error = w.sup_distance(v) / std::max(v.sup_norm(), 1e-300);
    r.results["invertible"] = true;
    checks.expect("kernel_empty_iff_invertible", kernel.empty());
    checks.at_most("round_trip_relative_error", error, 1e-10);
  } catch (const ResonantMultiplierError& e) {
    r.results["invertible"] = false;
    r.results["resonant_index"] = e.index();
    checks.expect("kernel_empty_iff_invertible",
                  std::find(kernel.begin(), kernel.end(), e.index()) != kernel.end());
    checks.report("resonant_magnitude", e.magnitude());
  }

  const auto witness = torus::embedding_defect_search(ell, flow, order, K);
  if (witness) {
    r.results["defect_witness"] = {{"k", witness->k}, {"defect", witness->defect}, {"order", order}};
    checks.report("defect_witness", witness->defect);
  } else {
    r.results["defect_witness"] = nullptr;
  }
  r.results["weighted_inverse_bound"] = torus::weighted_inverse_bound(ell, flow, order, K);
  checks.report("weighted_inverse_bound", r.results["weighted_inverse_bound"].get<double>());

  if (kernel.empty()) {
    Json growth = Json::array();
    for (const auto& g : torus::ck_inverse_growth(flow, ell, order, fibonacci_indices(flow.dimension(), K))) {
      growth.push_back({{"k", g.k}, {"ratio", g.ratio}});
    }
    r.results["ck_growth"] = std::move(growth);
  }
}

// ---------------------------------------------------------------- line

void run_line(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const double s = param<double>(c.params, "s", 1.0);
  const double h = param<double>(c.params, "h", 1e-3);
  if (!(h > 0.0) || !(s > 0.0)) bad_config("line needs s > 0 and h > 0");
  Bump bump{};
  if (c.params.contains("profile")) {
    const Json& p = c.params.at("profile");
    bump = {param<double>(p, "center", 0.0), param<double>(p, "radius", 0.5), param<double>(p, "amplitude", 1.0)};
    if (!(bump.radius > 0.0)) bad_config("profile radius must be positive");
  } else {
    Rng rng = Rng(c.seed).split(2);
    bump = random_bump(rng);
  }
  const double half = h * std::ceil((std::max(std::abs(bump.lo()), std::abs(bump.hi())) + s + 1.0) / h);
  const SupportInterval support{bump.lo(), bump.hi()};
  const auto g = GridFunction::sample(-half, half, h, bump, support);
  const auto g_prime =
      GridFunction::sample(-half, half, h, [&](double x) { return bump.derivative(x); }, support);
  r.results["profile"] = {{"center", bump.center}, {"radius", bump.radius}, {"amplitude", bump.amplitude}};
  r.results["window"] = {-half, half};

  const GridFunction f = line::preimage_delta(g, s, -half, half);
  const double delta_res = line::delta_residual(f, g, s);
  checks.at_most("delta_preimage_residual", delta_res, 1e-12);

  const GridFunction hb = line::preimage_beta(g_prime, s, -half, half);
  checks.at_most("beta_preimage_residual", line::beta_residual(hb, g, s), 5e-6);

  // beta_s F' = (F(x + s) - F(x)) / s vanishes for s-periodic F.
  const double two_pi_over_s = 2.0 * std::numbers::pi / s;
  const auto periodic_prime =
      GridFunction::sample(-half, half, h, [&](double x) { return std::cos(two_pi_over_s * x); });
  checks.at_most("beta_kills_periodic_derivative", line::beta_s_line(periodic_prime, s).sup_norm(), 5e-6);

  const double obstruction = line::obstruction_per(g_prime, s);
  r.results["obstruction"] = obstruction;
  checks.report("obstruction", obstruction);

  PlotData plot{"x", "value", {}, {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    plot.xs.push_back(f.x(i));
    plot.ys.push_back(f[i]);
  }
  r.plot = std::move(plot);
}

// ---------------------------------------------------------------- circle

void run_circle(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const auto z = trig_param(c.params, "field", circle::TrigPolynomial(0.0, {}, {1.0}));
  const auto f = trig_param(c.params, "f", circle::TrigPolynomial(0.0, {1.0}, {}));
  const double theta1 = param<double>(c.params, "theta1", 0.5 * std::numbers::pi);
  const double T = param<double>(c.params, "T", 40.0);
  const double dt = param<double>(c.params, "dt", 0.01);

  const circle::CircleField field = circle::make_field(z);
  Json zeros = Json::array();
  for (const auto& zero : field.zero_set) zeros.push_back({{"angle", zero.angle}, {"multiplicity", zero.multiplicity}});
  r.results["zeros"] = std::move(zeros);

  const circle::FlowCurve curve = circle::integrate_circle_flow(field, theta1, T, dt);
  const GridFunction pulled = circle::pullback_along_flow(f, curve);
  const double forward = circle::tail_oscillation(pulled, 0.5 * T, T);
  const double backward = circle::tail_oscillation(pulled, -T, -0.5 * T);
  r.results["tail_oscillation"] = {{"forward", forward}, {"backward", backward}};
  r.results["limits"] = {{"forward", pulled[pulled.size() - 1]}, {"backward", pulled[0]}};
  checks.report("forward_tail_oscillation", forward);
  checks.report("backward_tail_oscillation", backward);

  r.plot = PlotData{"t", "phi", curve.t, curve.phi};
}

// ---------------------------------------------------------------- jordan

Matrix load_matrix(const Json& params) {
  if (params.contains("matrix")) return io::matrix_from_json(params.at("matrix"));
  const auto path = required<std::string>(params, "matrix_path");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    bad_config(path + ": " + e.what());
  }
  return io::matrix_from_json(j);
}

void jordan_checks(const JordanCheck& check, Checks& checks) {
  checks.at_most("sum_residual", check.sum_residual, check.tolerance);
  checks.at_most("nilpotency", check.nilpotency, check.tolerance);
  checks.at_most("commutators", check.commutator, check.tolerance);
  checks.at_most("hyperbolic_spectrum_real", check.hyperbolic_imag, check.tolerance);
  checks.at_most("elliptic_spectrum_imaginary", check.elliptic_real, check.tolerance);
  checks.at_most("semisimple_part_diagonalizable", check.semisimplicity, check.tolerance);
}

void run_jordan(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const Matrix a = load_matrix(c.params);
  const RealJordanResult result = real_jordan_spectral(a);
  const JordanCheck check = verify_jordan(a, result);
  r.results["decomposition"] = io::decomposition_report(a, result, check);
  jordan_checks(check, checks);

  Rng rng = Rng(c.seed).split(7);
  const Matrix s = random_conditioned(rng, static_cast<int>(a.rows()), 1e3);
  const Matrix si = s.inverse();
  const JordanDecomposition moved = real_jordan(s * a * si);
  const auto& p = result.parts;
  const double scale = std::max((s * a * si).norm(), 1e-300);
  const double equivariance = std::max({(moved.a_n - s * p.a_n * si).norm(), (moved.a_h - s * p.a_h * si).norm(),
                                        (moved.a_e - s * p.a_e * si).norm()}) /
                              scale;
  checks.at_most("conjugation_equivariance", equivariance, 1e-6);
}

// ---------------------------------------------------------------- sphere

Matrix named_generator(const std::string& name, int d, Rng& rng) {
  if (name == "boost") return boost_generator(d, 0);
  if (name == "rotation") return rotation_generator(d, 0, 1);
  if (name == "null") return null_rotation_generator(d);
  if (name == "random") return random_lorentz_algebra(rng, d);
  bad_config("unknown generator '" + name + "' (boost, rotation, null, random)");
}

void run_sphere(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const int d = param<int>(c.params, "d", 2);
  const std::string op = param<std::string>(c.params, "op", "all");
  const int pairs = param<int>(c.params, "pairs", 200);
  const int matrices = param<int>(c.params, "matrices", 20);
  if (d < 1 || pairs < 1 || matrices < 1) bad_config("sphere needs d >= 1, pairs >= 1, matrices >= 1");
  const bool all = op == "all";
  if (!all && op != "act" && op != "factor" && op != "cocycle" && op != "limits" && op != "classify-generator") {
    bad_config("unknown sphere op '" + op + "'");
  }
  const Rng root(c.seed);

  if (all || op == "act" || op == "factor" || op == "cocycle") {
    Rng rng = root.split(3);
    double cocycle = 0.0;
    double action = 0.0;
    double identity = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const LorentzElement g1 = random_lorentz_element(rng, d);
      const LorentzElement g2 = random_lorentz_element(rng, d);
      const SpherePoint x = random_sphere_point(rng, d);
      const SpherePoint g2x = conformal_act(g2, x);
      cocycle = std::max(cocycle, std::abs(conformal_factor(g1 * g2, x) -
                                           conformal_factor(g1, g2x) * conformal_factor(g2, x)));
      action = std::max(action, (conformal_act(g1 * g2, x).coords() - conformal_act(g1, g2x).coords()).norm());
      identity = std::max(identity, std::abs(conformal_factor(LorentzElement::identity(d), x) - 1.0));
    }
    checks.at_most("cocycle_residual", cocycle, 1e-10);
    checks.at_most("group_action_residual", action, 1e-10);
    checks.at_most("identity_factor", identity, 1e-15);
  }

  if (all || op == "limits") {
    Rng rng = root.split(4);
    double agreement = 0.0;
    double fixed = 0.0;
    for (int i = 0; i < matrices; ++i) {
      const int n = 3 + i % 3;
      const Matrix a = random_real_spectrum_matrix(rng, n);
      Vector v(n);
      for (int j = 0; j < n; ++j) v[j] = rng.normal();
      v.normalize();
      const Vector predicted = orbit_limit_predict(a, v);
      const Vector numeric = orbit_limit_numeric(a, v, 50.0);
      agreement = std::max(agreement, (predicted - numeric).norm());
      fixed = std::max(fixed, projective_fixed_point_residual(a, predicted));
    }
    checks.at_most("orbit_limit_agreement", agreement, 1e-6);
    checks.at_most("orbit_limit_fixed_point", fixed, 1e-8);
  }

  if (all || op == "classify-generator") {
    Rng rng = root.split(5);
    const Matrix x = named_generator(param<std::string>(c.params, "generator", "rotation"), d, rng);
    const GeneratorClassification cls = classify_generator(x);
    r.results["generator"] = {{"matrix", io::to_json(x)},
                              {"case", to_string(cls.kind)},
                              {"elliptic_norm", cls.elliptic_norm},
                              {"parts", io::decomposition_report(x, cls.jordan, verify_jordan(x, cls.jordan))}};
    checks.expect("parts_in_algebra", cls.parts_in_algebra);
    checks.report("elliptic_norm", cls.elliptic_norm);
  }
}

// ---------------------------------------------------------------- expmap

void run_expmap(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const std::string kind = param<std::string>(c.params, "flow", "torus");
  const RealParameter t = real_param(c.params, "t", "1/2");
  if (kind == "torus") {
    const torus::TorusFlow flow(real_list(c.params, "theta", {"sqrt2"}));
    const int K = param<int>(c.params, "K", 8);
    if (K < 0) bad_config("expmap needs K >= 0");
    Rng rng = Rng(c.seed).split(6);
    const LatticeSpectrum v = random_spectrum(rng, flow.dimension(), K, true);
    const semidirect::FlowDescriptor descriptor = semidirect::TorusLinear{flow};
    const auto element = semidirect::exp_semidirect(v, t, descriptor);
    r.results["element"] = io::to_json(element);
    if (t.to_double() != 0.0) {
      checks.at_most("relation_residual", semidirect::relation_residual(v, t, descriptor), 1e-10);
    }
  } else if (kind == "line") {
    const double h = param<double>(c.params, "h", 1e-3);
    Rng rng = Rng(c.seed).split(6);
    const Bump bump = random_bump(rng);
    const double half = h * std::ceil((std::abs(t.to_double()) + 2.0) / h);
    const auto v = GridFunction::sample(-half, half, h, bump);
    const auto v_prime = GridFunction::sample(-half, half, h, [&](double x) { return bump.derivative(x); });
    const semidirect::FlowDescriptor descriptor = semidirect::LineTranslation{};
    const auto element = semidirect::exp_semidirect(v, t, descriptor);
    r.results["element"] = io::to_json(element);
    if (t.to_double() != 0.0) {
      checks.at_most("relation_residual", semidirect::relation_residual(v, t, descriptor, v_prime), 1e-6);
    }
  } else {
    bad_config("expmap flow must be 'torus' or 'line'");
  }
}

// ---------------------------------------------------------------- singular times

void run_singular_times(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const RealParameter period = real_param(c.params, "T", "1");
  const int m = param<int>(c.params, "m", 1);
  const int n_max = param<int>(c.params, "n_max", 5);
  const auto times = semidirect::periodic_singular_times(period, m, n_max);
  // A T-periodic flow on the circle: theta = 1 / T.
  const torus::TorusFlow flow({RealParameter(mpq_class(1)) / period});
  Json list = Json::array();
  bool all_singular = true;
  for (int n = 1; n <= n_max; ++n) {
    const RealParameter& t = times[static_cast<std::size_t>(n - 1)];
    const std::int64_t k = static_cast<std::int64_t>(n) * std::abs(m);
    const auto kernel = torus::kernel_indices(t, flow, static_cast<int>(k), 1e-12);
    const bool singular = std::find(kernel.begin(), kernel.end(), LatticeIndex{k}) != kernel.end();
    all_singular = all_singular && singular;
    list.push_back({{"t", t.to_double()}, {"k", k}, {"singular", singular}});
  }
  r.results["times"] = std::move(list);
  checks.expect("every_time_singular", all_singular);
}

// ---------------------------------------------------------------- bms

void run_bms(const ExperimentConfig& c, ExperimentReport& r, Checks& checks) {
  const int d = param<int>(c.params, "d", 2);
  const auto samples = param<std::size_t>(c.params, "samples", 500);
  const int n_max = param<int>(c.params, "n_max", 5);
  const auto w = semidirect::bms_witness(d, samples, 64, n_max);
  r.results["generator"] = io::to_json(w.generator);
  r.results["lambda"] = w.lambda;
  r.results["period"] = w.period;
  Json times = Json::array();
  bool resonant = true;
  for (const auto& s : w.singular_times) {
    times.push_back({{"t", s.t}, {"expected", s.expected}, {"raised", s.raised ? Json(*s.raised) : Json(nullptr)}});
    resonant = resonant && s.resonant();
  }
  r.results["singular_times"] = std::move(times);
  checks.expect("case2", w.case2);
  checks.at_most("conformal_factor_is_one", w.conformal_factor_defect, 1e-12);
  checks.at_most("orbit_on_circle", w.orbit_circle_defect, 1e-8);
  checks.at_most("character_phase", w.phase_residual, 1e-8);
  checks.expect("singular_times_resonant", resonant);
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, text] : kCommands) {
    if (name == text) return cmd;
  }
  bad_config("unknown command '" + name + "'");
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kReportOnly: return "report-only";
  }
  return "unknown";
}

bool ExperimentReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckRecord& c) { return c.status == CheckStatus::kFail; });
}

Json config_json(const ExperimentConfig& config) {
  return {{"command", to_string(config.command)},
          {"params", config.params},
          {"seed", config.seed},
          {"format", config.format == Format::kJson ? "json" : "csv"}};
}

std::string config_hash(const ExperimentConfig& config) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(config_json(config).dump());
  return out.str();
}

ExperimentReport evaluate(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report{config.command, config_json(config), config_hash(config), {}, Json::object(),
                          std::nullopt, 0.0};
  if (!config.params.is_object()) bad_config("params must be a JSON object");
  Checks checks(report.checks);
  switch (config.command) {
    case Command::kClassify: run_classify(config, report, checks); break;
    case Command::kRelation: run_relation(config, report, checks); break;
    case Command::kDiscrepancy: run_discrepancy(config, report, checks); break;
    case Command::kTorus: run_torus(config, report, checks); break;
    case Command::kLine: run_line(config, report, checks); break;
    case Command::kCircle: run_circle(config, report, checks); break;
    case Command::kJordan: run_jordan(config, report, checks); break;
    case Command::kSphere: run_sphere(config, report, checks); break;
    case Command::kExpmap: run_expmap(config, report, checks); break;
    case Command::kSingularTimes: run_singular_times(config, report, checks); break;
    case Command::kBmsWitness: run_bms(config, report, checks); break;
  }
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const ExperimentReport& report, bool include_timing) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json item = {{"name", c.name}, {"status", to_string(c.status)}, {"value", c.value}};
    if (c.status != CheckStatus::kReportOnly) {
      item["tolerance"] = c.tolerance;
      item["relation"] = c.relation;
    }
    checks.push_back(std::move(item));
  }
  Json out = {{"schema", "expflow/1"},
              {"command", to_string(report.command)},
              {"config", report.config},
              {"config_hash", report.config_hash},
              {"checks", std::move(checks)},
              {"passed", report.all_passed()},
              {"results", report.results}};
  if (include_timing) out["wall_time_ms"] = report.wall_time_ms;
  return out;
}

ExperimentReport run(const ExperimentConfig& config) {
  ExperimentReport report = evaluate(config);
  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIoError, "cannot write " + config.output_path);
  }
  std::ostream& out = config.output_path.empty() ? std::cout : file;
  if (config.format == Format::kCsv) {
    if (!report.plot) bad_config(to_string(config.command) + " has no plot data for csv output");
    io::write_csv(out, report.plot->x_name, report.plot->y_name, report.plot->xs, report.plot->ys);
  } else {
    out << to_json(report, config.include_timing).dump(2) << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed");
  return report;
}

int exit_code(const ExperimentReport& report) { return report.all_passed() ? 0 : 1; }

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kIoError: return 3;
    default: return 4;
  }
}

}  // namespace expflow::cli
