#pragma once

#include <string>

#include "fgeom/suite.hpp"

namespace fgeom {

/// Configuration errors map to process exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string example;  // "flat" | "sphere"
  int m = 1, t = 1;     // flat parameters
  int n = 1, s = 2;     // sphere parameters
  std::string connection = "all";  // riemannian | ssm | ssnm | all
  int points = 20;
  int planes = 10;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::string json_path;  // optional
};

struct Report {
  RunConfig config;
  std::vector<CheckRecord> checks;
  bool overall_pass = true;
  double wall_time_ms = 0.0;
};

/// Builds the named example, runs the verification suite and assembles the
/// report. Throws UsageError on invalid configuration.
Report run(const RunConfig& config);

/// Stable-field-order JSON with numbers at 17 significant digits. Two runs
/// with identical config and seed produce byte-identical output except for
/// the wall_time_ms field. Throws if the report carries no checks.
std::string emit_json(const Report& report);

}  // namespace fgeom
