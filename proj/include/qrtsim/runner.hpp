#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace qrtsim {

// One CLI invocation.  Commands: evolve, correlate, kernels, balance,
// fig1..fig5.  The config is required for the generic commands and ignored by
// the figure commands (their parameters are fixed).  Generic commands work in
// the absolute units of the config; figure outputs use the ensemble-mean
// dressed rate as the unit of time.
struct RunOptions {
  std::string command;
  std::optional<std::string> config_path;
  std::string out_dir = ".";
  bool strict = false;
};

// Executes a command, writing outputs under out_dir and progress notes to
// `out` / warnings to `err`.  Returns 0 on success and throws library errors
// otherwise (the CLI maps exception types to exit codes: validation 2,
// tolerance/stability in strict mode 3).
int run_command(const RunOptions& options, std::ostream& out,
                std::ostream& err);

// Exit code for an exception raised by run_command.
int exit_code_for(const std::exception& e);

}  // namespace qrtsim
