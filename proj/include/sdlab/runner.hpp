#pragma once

// Executes a validated configuration and writes its reports.

#include <iosfwd>
#include <string>

#include "sdlab/run_config.hpp"

namespace sdlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitBlowUp = 3,
  kExitNoContraction = 4,
  kExitNotConverged = 5,
};

/// Runs the configured mode into cfg.output (created if needed). Numeric aborts
/// are reported to `err` and to error.json; the return value is an ExitCode.
int run(const RunConfig& cfg, std::ostream& err);

/// Loads, validates and runs a configuration file.
int run_file(const std::string& path, const ConfigOverrides& overrides, std::ostream& err);

}  // namespace sdlab
