#pragma once

// JSON and CSV forms of the library's values.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expflow/grid_function.hpp"
#include "expflow/lattice_spectrum.hpp"
#include "expflow/real_jordan.hpp"
#include "expflow/semidirect.hpp"

namespace expflow::io {

using Json = nlohmann::json;

// {d, K, real_valued, entries: [[k...], re, im]} with the nonzero entries in
// lexicographic order of k.
Json to_json(const LatticeSpectrum& spec);
LatticeSpectrum spectrum_from_json(const Json& j);

// {n, rows: [[...], ...]}
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {a, h, samples, support?: [u, v]}
Json to_json(const GridFunction& f);
GridFunction grid_from_json(const Json& j);

// Parts, clusters and the residual diagnostics of verify_jordan.
Json decomposition_report(const Matrix& a, const RealJordanResult& result, const JordanCheck& check);

// {repr, t, payload}
Json to_json(const semidirect::SemidirectElement& e);

// Shortest decimal that reads back to the same double (at most 17
// significant digits); "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

// Header line "x_name,y_name" then one row per pair.
void write_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
               const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace expflow::io
