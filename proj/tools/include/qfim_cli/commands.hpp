#pragma once

#include "qfim_cli/config.hpp"

#include <iosfwd>

namespace qfim::cli {

enum ExitCode : int { kPass = 0, kPropertyFailure = 1, kConfigError = 2, kNumericError = 3 };

// Each command writes its files under config.out_dir and returns an exit code.
// Errors propagate as exceptions; run_cli maps them to exit codes.
int cmd_compute(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_ngd(const RunConfig& config, std::ostream& log);
int cmd_densities(const RunConfig& config, std::ostream& log);

// Full command-line entry point; diagnostics go to `err`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qfim::cli
