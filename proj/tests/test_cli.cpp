#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "expflow_cli/experiment.hpp"

namespace expflow::cli {
namespace {

namespace fs = std::filesystem;

ExperimentConfig config(Command c, Json params, std::uint64_t seed = 0) {
  ExperimentConfig out;
  out.command = c;
  out.params = std::move(params);
  out.seed = seed;
  return out;
}

const CheckRecord& check(const ExperimentReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no check " + name);
}

// Every pass must survive recomputation against its own tolerance.
void expect_consistent(const ExperimentReport& r) {
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::kReportOnly) continue;
    const bool holds = c.relation == "<=" ? c.value <= c.tolerance : c.value >= c.tolerance;
    EXPECT_EQ(c.status == CheckStatus::kPass, holds) << c.name;
  }
}

fs::path temp_file(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / ("expflow_test_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << contents;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EXPFLOW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Evaluate, ClassifySqrt2) {
  const auto r = evaluate(config(Command::kClassify, {{"x", "sqrt2"}}));
  EXPECT_EQ(r.results["classification"], "non-liouville-certified");
  EXPECT_NEAR(r.results["exponent_estimate"].get<double>(), 2.0, 0.25);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Evaluate, TorusGoldenIsInvertible) {
  const auto r = evaluate(config(Command::kTorus, {{"theta", {"phi"}}, {"ell", "1"}, {"K", 16}}));
  EXPECT_TRUE(r.results["kernel"].empty());
  EXPECT_TRUE(r.results["invertible"].get<bool>());
  EXPECT_EQ(check(r, "round_trip_relative_error").status, CheckStatus::kPass);
  expect_consistent(r);
}

TEST(Evaluate, TorusHalfIsResonant) {
  const auto r = evaluate(config(Command::kTorus, {{"theta", {"1/2"}}, {"ell", "1"}, {"K", 8}}));
  EXPECT_FALSE(r.results["invertible"].get<bool>());
  EXPECT_EQ(r.results["resonant_index"], Json::array({2}));
  EXPECT_TRUE(r.all_passed());
}

TEST(Evaluate, JordanRotationGenerator) {
  const auto path = temp_file("rot.json", R"({"n": 2, "rows": [[0, -1], [1, 0]]})");
  const auto r = evaluate(config(Command::kJordan, {{"matrix_path", path.string()}}));
  fs::remove(path);
  const Matrix ae = io::matrix_from_json(r.results["decomposition"]["A_e"]);
  Matrix input(2, 2);
  input << 0, -1, 1, 0;
  EXPECT_LE((ae - input).norm(), 1e-12);
  EXPECT_TRUE(r.all_passed());
  expect_consistent(r);
}

TEST(Evaluate, EveryCommandRunsAndIsConsistent) {
  const std::vector<ExperimentConfig> configs = {
      config(Command::kRelation, {{"theta", {"sqrt2", "1+sqrt2"}}, {"bound", 5}}),
      config(Command::kDiscrepancy, {{"s", "phi"}, {"n", 200}}),
      config(Command::kLine, {{"s", 1.0}, {"h", 1e-3}}, 3),
      config(Command::kCircle, {{"field", {{"constant", 1.0}, {"cos", {-1.0}}}}, {"T", 20.0}}),
      config(Command::kSphere, {{"d", 2}, {"pairs", 20}, {"matrices", 3}}, 4),
      config(Command::kExpmap, {{"flow", "torus"}, {"theta", {"sqrt2"}}, {"t", "1/3"}}, 5),
      config(Command::kExpmap, {{"flow", "line"}, {"t", "1/2"}}, 5),
      config(Command::kSingularTimes, {{"T", "1"}, {"m", 1}, {"n_max", 3}}),
      config(Command::kBmsWitness, {{"d", 2}}),
  };
  for (const auto& c : configs) {
    const auto r = evaluate(c);
    EXPECT_TRUE(r.all_passed()) << to_string(c.command);
    expect_consistent(r);
  }
}

TEST(Evaluate, RelationFindsKnownRelation) {
  const auto r = evaluate(config(Command::kRelation, {{"theta", {"sqrt2", "1+sqrt2"}}, {"bound", 5}}));
  ASSERT_TRUE(r.results["found"].get<bool>());
  const auto k = r.results["k"].get<std::vector<long>>();
  EXPECT_EQ(std::abs(k[0]), 1);
  EXPECT_EQ(k[0], -k[1]);
}

TEST(Evaluate, SingularTimesSchedule) {
  const auto r = evaluate(config(Command::kSingularTimes, {{"T", "1"}, {"m", 1}, {"n_max", 3}}));
  ASSERT_EQ(r.results["times"].size(), 3u);
}

TEST(Determinism, IdenticalConfigsGiveIdenticalReports) {
  for (const auto& c : {config(Command::kLine, {{"s", 2.0}, {"h", 1e-2}}, 11),
                        config(Command::kSphere, {{"d", 3}, {"pairs", 10}, {"matrices", 2}}, 12),
                        config(Command::kTorus, {{"theta", {"sqrt2", "sqrt3"}}, {"K", 6}}, 13)}) {
    EXPECT_EQ(to_json(evaluate(c)).dump(), to_json(evaluate(c)).dump());
  }
  const auto a = evaluate(config(Command::kLine, {{"s", 2.0}, {"h", 1e-2}}, 11));
  const auto b = evaluate(config(Command::kLine, {{"s", 2.0}, {"h", 1e-2}}, 12));
  EXPECT_NE(a.config_hash, b.config_hash);
}

TEST(Report, SchemaAndTiming) {
  const auto r = evaluate(config(Command::kClassify, {{"x", "355/113"}}));
  const Json j = to_json(r);
  EXPECT_EQ(j["schema"], "expflow/1");
  EXPECT_EQ(j["command"], "classify");
  EXPECT_FALSE(j.contains("wall_time_ms"));
  EXPECT_TRUE(to_json(r, true).contains("wall_time_ms"));
  EXPECT_EQ(r.results["classification"], "rational");
}

TEST(Report, HashIgnoresOutputPath) {
  auto a = config(Command::kClassify, {{"x", "phi"}});
  auto b = a;
  b.output_path = "/tmp/elsewhere.json";
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(ExitCodes, Mapping) {
  ExperimentReport failing{Command::kClassify, Json::object(), "", {{"x", CheckStatus::kFail, 1.0, 0.5, "<="}},
                           Json::object(), std::nullopt, 0.0};
  EXPECT_EQ(exit_code(failing), 1);
  failing.checks[0].status = CheckStatus::kReportOnly;
  EXPECT_EQ(exit_code(failing), 0);
  EXPECT_EQ(exit_code(ErrorCode::kInvalidConfig), 2);
  EXPECT_EQ(exit_code(ErrorCode::kIoError), 3);
  EXPECT_EQ(exit_code(ErrorCode::kIllConditionedSpectrum), 4);
  EXPECT_THROW(parse_command("nope"), Error);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("classify sqrt2"), 0);
  EXPECT_EQ(run_cli("torus --theta phi --ell 1 -K 16"), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("classify"), 2);
  EXPECT_EQ(run_cli("classify sqrt2 --format xml"), 2);
  EXPECT_EQ(run_cli("classify 'not a number'"), 2);
  EXPECT_EQ(run_cli("classify sqrt2 --params '[1]'"), 2);
  // The averaging tolerance is pinned for a 1e-3 grid; a coarse grid misses it.
  EXPECT_EQ(run_cli("line --s 1 --step 0.01 --seed 3"), 1);
  EXPECT_EQ(run_cli("jordan /nonexistent/matrix.json"), 3);
  EXPECT_EQ(run_cli("classify sqrt2 -o /nonexistent/dir/out.json"), 3);
  const auto close = temp_file("close.json", R"({"rows": [[1, 0], [0, 1.0005]]})");
  EXPECT_EQ(run_cli("jordan " + close.string()), 4);
  fs::remove(close);
}

TEST(Binary, FileOutputIsByteIdentical) {
  const fs::path a = fs::temp_directory_path() / ("expflow_a_" + std::to_string(::getpid()) + ".json");
  const fs::path b = fs::temp_directory_path() / ("expflow_b_" + std::to_string(::getpid()) + ".json");
  ASSERT_EQ(run_cli("line --s 2 --step 0.001 --seed 9 -o " + a.string()), 0);
  ASSERT_EQ(run_cli("line --s 2 --step 0.001 --seed 9 -o " + b.string()), 0);
  const std::string text = read_all(a);
  EXPECT_FALSE(text.empty());
  EXPECT_EQ(text, read_all(b));
  EXPECT_EQ(Json::parse(text)["schema"], "expflow/1");
  fs::remove(a);
  fs::remove(b);
}

TEST(Binary, CsvPlotData) {
  const fs::path p = fs::temp_directory_path() / ("expflow_c_" + std::to_string(::getpid()) + ".csv");
  ASSERT_EQ(run_cli("circle --T 10 --format csv -o " + p.string()), 0);
  std::istringstream in(read_all(p));
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find(','), std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos);
    std::stod(line.substr(0, comma));
    std::stod(line.substr(comma + 1));
  }
  EXPECT_GT(rows, 10);
  fs::remove(p);
  EXPECT_EQ(run_cli("classify sqrt2 --format csv"), 2);
}

}  // namespace
}  // namespace expflow::cli
