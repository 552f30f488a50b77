#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracdiff/config.hpp"
#include "fracdiff/csv.hpp"

namespace fracdiff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

// Table produced by a subcommand plus the file it belongs in.
struct CommandOutput {
  std::string path;
  CsvTable table;
};

// Computes the subcommand's table without touching the filesystem.
CommandOutput build_output(const RunConfig& config);

// Computes and writes <output>_<kind>.csv. Returns the path written.
std::string run_subcommand(const RunConfig& config);

// Command-line entry point: parses arguments, runs, maps errors to exit
// codes (2 configuration, 3 numerical failure). Diagnostics go to err.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracdiff
