#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "specbound/config.hpp"
#include "specbound/radial_solver.hpp"
#include "specbound/report.hpp"

namespace specbound {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitConfig = 2,
  kExitNumeric = 3,
};

struct ScenarioOutcome {
  VerificationReport report;
  /// The radial function the check was computed from, for the per-scenario CSV dump.
  std::optional<RadialFunction> radial;
};

struct RunResult {
  std::vector<ScenarioOutcome> outcomes;
  int exit_code = kExitOk;

  std::vector<VerificationReport> reports() const;
};

/// Runs every scenario on up to `config.jobs` threads. Outcomes keep configuration order
/// and a failing scenario becomes an `error` row without stopping the batch.
RunResult execute(const RunConfig& config);

/// 3 if any row errored, else 1 if any applicable row was violated, else 0.
int exit_code_for(const std::vector<VerificationReport>& reports);

/// execute() followed by report.json, report.csv and radial_<id>.csv in config.output_dir.
int run(const RunConfig& config);

}  // namespace specbound
