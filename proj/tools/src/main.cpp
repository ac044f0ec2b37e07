#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expflow_cli/experiment.hpp"

namespace {

using expflow::cli::Command;
using expflow::cli::ExperimentConfig;
using expflow::cli::Json;

struct Common {
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::string extra = "{}";
  bool timing = false;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--seed", common.seed, "PRNG seed for randomized inputs");
  sub->add_option("-o,--output", common.output, "Output file (default: stdout)");
  sub->add_option("--format", common.format, "json or csv (plot data)")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--params", common.extra, "Extra parameters as a JSON object");
  sub->add_flag("--timing", common.timing, "Include wall time in the JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for exponentials of C^inf(M) x| R"};
  app.require_subcommand(1);
  Common common;
  Json params = Json::object();
  Command command = Command::kClassify;

  // Subcommand callbacks record which command ran; option values are
  // collected into `params` after parsing.
  std::string x;
  std::vector<std::string> theta;
  std::string s_text;
  std::int64_t bound = 20;
  std::int64_t n_points = 1000;
  std::string ell = "1";
  int K = 16;
  int order = 3;
  double shift = 1.0;
  double h = 1e-3;
  std::string field_json;
  double theta1 = 1.5707963267948966;
  double horizon = 40.0;
  double dt = 0.01;
  std::string matrix_path;
  int d = 2;
  std::string sphere_op = "all";
  std::string generator = "rotation";
  std::string flow = "torus";
  std::string t_text = "1/2";
  std::string period = "1";
  int m = 1;
  int n_max = 5;

  auto* classify = app.add_subcommand("classify", "Diophantine classification of a real parameter");
  classify->add_option("x", x, "Expression, e.g. sqrt2, phi, liouville(3), 355/113")->required();

  auto* relation = app.add_subcommand("relation", "Search for k.theta in Z with |k|_inf <= bound");
  relation->add_option("theta", theta, "Components of theta")->required();
  relation->add_option("--bound", bound, "Sup-norm bound on k");

  auto* discrepancy = app.add_subcommand("discrepancy", "Star discrepancy of {n s}, n = 1..N");
  discrepancy->add_option("s", s_text, "Rotation number")->required();
  discrepancy->add_option("N", n_points, "Number of points")->required();

  auto* torus = app.add_subcommand("torus", "Averaging multipliers of a linear torus flow");
  torus->add_option("--theta", theta, "Flow direction (one value per coordinate)");
  torus->add_option("--ell", ell, "Averaging length");
  torus->add_option("-K", K, "Band limit");
  torus->add_option("--order", order, "Sobolev order N for defects and growth");

  auto* line = app.add_subcommand("line", "Difference and averaging operators on the line");
  line->add_option("--s", shift, "Shift");
  line->add_option("--step", h, "Grid step");

  auto* circle = app.add_subcommand("circle", "Flow of a trigonometric vector field on the circle");
  circle->add_option("--field", field_json, R"(Field as JSON, e.g. {"constant":1,"cos":[-1]})");
  circle->add_option("--theta1", theta1, "Initial angle");
  circle->add_option("--T", horizon, "Time horizon");
  circle->add_option("--dt", dt, "RK4 step");

  auto* jordan = app.add_subcommand("jordan", "Real Jordan decomposition of a matrix");
  jordan->add_option("matrix", matrix_path, "Matrix JSON file {n, rows}")->required();

  auto* sphere = app.add_subcommand("sphere", "Conformal Lorentz action on the sphere");
  sphere->add_option("-d", d, "Sphere dimension");
  sphere->add_option("--op", sphere_op, "act, factor, cocycle, limits, classify-generator or all");
  sphere->add_option("--generator", generator, "boost, rotation, null or random");

  auto* expmap = app.add_subcommand("expmap", "Semidirect exponential (v, t) -> (beta_t v, t)");
  expmap->add_option("--flow", flow, "torus or line")->check(CLI::IsMember({"torus", "line"}));
  expmap->add_option("--theta", theta, "Torus flow direction");
  expmap->add_option("--t", t_text, "Time");

  auto* singular = app.add_subcommand("singular-times", "Singular times T/(n m) of a periodic flow");
  singular->add_option("--T", period, "Period");
  singular->add_option("--m", m, "Nonzero integer multiple");
  singular->add_option("--n-max", n_max, "Number of times");

  auto* bms = app.add_subcommand("bms-witness", "Rotation generator witness chain");
  bms->add_option("-d", d, "Sphere dimension");
  bms->add_option("--n-max", n_max, "Number of singular times");

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : expflow::cli::exit_code(expflow::ErrorCode::kInvalidConfig);
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    command = expflow::cli::parse_command(chosen->get_name());
    const auto given = [&](const char* name) { return chosen->count(name) > 0; };
    switch (command) {
      case Command::kClassify: params["x"] = x; break;
      case Command::kRelation:
        params["theta"] = theta;
        params["bound"] = bound;
        break;
      case Command::kDiscrepancy:
        params["s"] = s_text;
        params["n"] = n_points;
        break;
      case Command::kTorus:
        if (!theta.empty()) params["theta"] = theta;
        params["ell"] = ell;
        params["K"] = K;
        params["order"] = order;
        break;
      case Command::kLine:
        params["s"] = shift;
        params["h"] = h;
        break;
      case Command::kCircle:
        if (given("--field")) params["field"] = Json::parse(field_json);
        params["theta1"] = theta1;
        params["T"] = horizon;
        params["dt"] = dt;
        break;
      case Command::kJordan: params["matrix_path"] = matrix_path; break;
      case Command::kSphere:
        params["d"] = d;
        params["op"] = sphere_op;
        params["generator"] = generator;
        break;
      case Command::kExpmap:
        params["flow"] = flow;
        if (!theta.empty()) params["theta"] = theta;
        params["t"] = t_text;
        break;
      case Command::kSingularTimes:
        params["T"] = period;
        params["m"] = m;
        params["n_max"] = n_max;
        break;
      case Command::kBmsWitness:
        params["d"] = d;
        params["n_max"] = n_max;
        break;
    }
    const Json extra = Json::parse(common.extra);
    if (!extra.is_object()) throw expflow::Error(expflow::ErrorCode::kInvalidConfig, "--params must be an object");
    params.update(extra);

    ExperimentConfig config;
    config.command = command;
    config.params = std::move(params);
    config.seed = common.seed;
    config.output_path = common.output;
    config.format = common.format == "csv" ? expflow::cli::Format::kCsv : expflow::cli::Format::kJson;
    config.include_timing = common.timing;

    const auto report = expflow::cli::run(config);
    for (const auto& c : report.checks) {
      if (c.status == expflow::cli::CheckStatus::kFail) {
        std::cerr << "FAIL " << c.name << ": " << c.value << " (" << c.relation << ' ' << c.tolerance << ")\n";
      }
    }
    return expflow::cli::exit_code(report);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid-config: " << e.what() << '\n';
    return expflow::cli::exit_code(expflow::ErrorCode::kInvalidConfig);
  } catch (const expflow::Error& e) {
    std::cerr << e.what() << '\n';
    return expflow::cli::exit_code(e.code());
  }
}
