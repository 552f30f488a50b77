#pragma once

// Run configuration for the command-line front end.
//
// The configuration document is a flat JSON object; see README.md for the
// key list. Numeric values may be JSON numbers or strings holding a decimal
// or a fraction ("1/30").

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracdiff {

enum class Subcommand { kSolve, kConverge, kStability, kCoeffs, kCompareGl };

std::string to_string(Subcommand sub);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSolve;
  std::string problem = "example1";
  double alpha = 1.8;
  double lambda = 3.0;
  double sigma = 0.01;
  // Grid. a and b default to the problem's domain.
  std::optional<double> a;
  std::optional<double> b;
  long intervals = 0;
  // Scheme.
  double tau = 0.5;
  double dt = 0.0;
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  // Sweeps.
  std::vector<double> alphas;
  std::vector<double> taus;
  std::vector<double> mus;
  std::vector<double> resolutions;  // dx values
  int coupling_power = 1;           // "dt=dx" -> 1, "dt=dx^2" -> 2
  double dt_factor = 1.0;
  long theta_count = 4096;
  long max_offset = 0;  // coeffs: M
  std::string output = "fracdiff";
  // Accepted-with-warning settings, reported in output metadata.
  std::vector<std::string> warnings;
};

// Command-line values that take precedence over the document.
struct ConfigOverrides {
  std::optional<std::string> subcommand;
  std::optional<std::string> alpha;
  std::optional<std::string> tau;
  std::optional<std::string> dt;
  std::optional<std::string> intervals;
  std::optional<std::string> output;
};

// Parses and validates a configuration document. Throws ConfigError with
// the offending field (and line, when it can be located) on failure.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

// Fully resolved configuration as a single-line JSON object with sorted keys.
std::string resolved_json(const RunConfig& config);

}  // namespace fracdiff
