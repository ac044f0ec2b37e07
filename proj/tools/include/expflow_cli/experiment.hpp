#pragma once

// Experiment runner behind the `expflow` command line: one command per
// library operation family, typed parameters carried as JSON, a report of
// named checks, and an exit code that is nonzero iff a non-report-only
// check failed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expflow/error.hpp"
#include "expflow/serialization.hpp"

namespace expflow::cli {

using io::Json;

enum class Command {
  kClassify,
  kRelation,
  kDiscrepancy,
  kTorus,
  kLine,
  kCircle,
  kJordan,
  kSphere,
  kExpmap,
  kSingularTimes,
  kBmsWitness,
};

std::string to_string(Command c);
// Throws invalid-config for unknown names.
Command parse_command(const std::string& name);

enum class Format { kJson, kCsv };

struct ExperimentConfig {
  Command command = Command::kClassify;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::string output_path;  // empty: standard output
  Format format = Format::kJson;
  bool include_timing = false;
};

enum class CheckStatus { kPass, kFail, kReportOnly };
std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status;
  double value;
  double tolerance;
  std::string relation;  // "<=", ">=" or "" for report-only
};

struct PlotData {
  std::string x_name;
  std::string y_name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct ExperimentReport {
  Command command;
  Json config;
  std::string config_hash;
  std::vector<CheckRecord> checks;
  Json results = Json::object();
  std::optional<PlotData> plot;
  double wall_time_ms = 0.0;

  bool all_passed() const;
};

// FNV-1a over the canonical JSON of the config (output path excluded).
std::string config_hash(const ExperimentConfig& config);
Json config_json(const ExperimentConfig& config);

// Runs the experiment without touching the filesystem (except the jordan
// command's matrix_path input).
ExperimentReport evaluate(const ExperimentConfig& config);
// evaluate() and write the report (JSON) or plot data (CSV) to the output.
ExperimentReport run(const ExperimentConfig& config);

Json to_json(const ExperimentReport& report, bool include_timing = false);

// 0 all checks pass, 1 a check failed, 2 invalid-config, 3 io-error,
// 4 any other library error.
int exit_code(const ExperimentReport& report);
int exit_code(ErrorCode code);

}  // namespace expflow::cli
