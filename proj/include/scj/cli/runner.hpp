#pragma once

#include <string>

#include "scj/cli/config.hpp"

namespace scj::cli {

enum ExitCode : int { kOk = 0, kToleranceFail = 1, kConfigError = 2, kNumericFail = 3 };

struct RunOptions {
  unsigned threads = 0;  ///< 0: hardware concurrency
  bool timing = false;   ///< adds a wall_ms column (breaks byte-identity)
};

struct RunOutcome {
  int exit_code = kOk;
  std::string output;   ///< CSV or JSON document
  std::string summary;  ///< one line for stderr
};

/// Analytic and Monte Carlo side by side with |delta| per grid point.
RunOutcome run_validate(const ExperimentConfig& cfg, const RunOptions& opt = {});
/// p_c, p_s, STC and NSEE per grid point from the configured engine(s).
RunOutcome run_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});
/// Solves the configured problems at every grid point; JSON report.
RunOutcome run_optimize(const ExperimentConfig& cfg, const RunOptions& opt = {});

RunOutcome run(Mode mode, const ExperimentConfig& cfg, const RunOptions& opt = {});

/// %.9g, the float format of every CSV cell.
std::string format_double(double v);

}  // namespace scj::cli
