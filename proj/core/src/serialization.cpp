#include "expflow/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "expflow/error.hpp"

namespace expflow::io {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kInvalidConfig, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

Json to_json(const LatticeSpectrum& spec) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto c = spec.coefficients()[i];
    if (c == LatticeSpectrum::Complex{}) continue;
    entries.push_back(Json::array({spec.index_at(i), c.real(), c.imag()}));
  }
  return {{"d", spec.dimension()},
          {"K", spec.bandlimit()},
          {"real_valued", spec.real_valued()},
          {"entries", std::move(entries)}};
}

LatticeSpectrum spectrum_from_json(const Json& j) {
  const int d = get<int>(j, "d");
  const int k = get<int>(j, "K");
  LatticeSpectrum base(d, k, get<bool>(j, "real_valued"));
  std::vector<LatticeSpectrum::Complex> c(base.size());
  for (const auto& e : field(j, "entries")) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::kInvalidConfig, "entry must be [k, re, im]");
    const auto index = e[0].get<LatticeIndex>();
    if (!base.contains(index)) throw Error(ErrorCode::kInvalidConfig, "entry index outside the band");
    c[base.offset(index)] = {e[1].get<double>(), e[2].get<double>()};
  }
  return LatticeSpectrum(d, k, std::move(c), base.real_valued());
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"rows", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = get<std::vector<std::vector<double>>>(j, "rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (j.contains("n") && get<Eigen::Index>(j, "n") != n) {
    throw Error(ErrorCode::kInvalidConfig, "matrix 'n' disagrees with the row count");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidConfig, "matrix has no rows");
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != n) throw Error(ErrorCode::kInvalidConfig, "matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) m(i, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Json to_json(const GridFunction& f) {
  Json j = {{"a", f.a()}, {"h", f.h()}, {"samples", f.samples()}};
  if (f.support()) j["support"] = {f.support()->u, f.support()->v};
  return j;
}

GridFunction grid_from_json(const Json& j) {
  std::optional<SupportInterval> support;
  if (j.contains("support")) {
    const auto s = get<std::array<double, 2>>(j, "support");
    support = SupportInterval{s[0], s[1]};
  }
  return GridFunction(get<double>(j, "a"), get<double>(j, "h"), get<std::vector<double>>(j, "samples"),
                      support);
}

Json decomposition_report(const Matrix& a, const RealJordanResult& result, const JordanCheck& check) {
  Json clusters = Json::array();
  for (const auto& c : result.clusters) {
    clusters.push_back({{"eigenvalue", {c.eigenvalue.real(), c.eigenvalue.imag()}},
                        {"multiplicity", c.multiplicity},
                        {"conjugate_pair", c.conjugate_pair}});
  }
  return {{"input", to_json(a)},
          {"A_n", to_json(result.parts.a_n)},
          {"A_s", to_json(result.parts.a_s)},
          {"A_h", to_json(result.parts.a_h)},
          {"A_e", to_json(result.parts.a_e)},
          {"clusters", std::move(clusters)},
          {"diagnostics",
           {{"tolerance", check.tolerance},
            {"sum_residual", check.sum_residual},
            {"nilpotency", check.nilpotency},
            {"commutator", check.commutator},
            {"hyperbolic_imag", check.hyperbolic_imag},
            {"elliptic_real", check.elliptic_real},
            {"semisimplicity", check.semisimplicity},
            {"passed", check.passed()}}}};
}

Json to_json(const semidirect::SemidirectElement& e) {
  Json payload = std::visit([](const auto& v) { return to_json(v); }, e.payload());
  return {{"repr", semidirect::to_string(e.representation())},
          {"t", e.t().to_double()},
          {"payload", std::move(payload)}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
               const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::kInvalidArgument, "csv columns differ in length");
  out << x_name << ',' << y_name << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) out << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "csv write failed");
}

}  // namespace expflow::io
