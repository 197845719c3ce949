#pragma once

#include <exception>
#include <ostream>

#include "config.hpp"

namespace rrlab::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigInvalid = 2,
  kExitCapExceeded = 3,
  kExitPrecisionTooLow = 4,
  kExitError = 5,
};

// Dispatches on cfg.subcommand and writes artifacts under cfg.out. Returns
// kExitCheckFailed when a report has a failing check; errors propagate.
int run(const ExperimentConfig& cfg, std::ostream& log);

int exit_code_for(const std::exception& e);

}  // namespace rrlab::tools
