#include "fracdiff/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracdiff/analysis.hpp"
#include "fracdiff/coefficients.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/grid.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"

#ifndef FRACDIFF_VERSION
#define FRACDIFF_VERSION "unknown"
#endif

namespace fracdiff {

namespace {

std::vector<std::string> header(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back(std::string("fracdiff ") + FRACDIFF_VERSION);
  lines.push_back("subcommand: " + to_string(cfg.subcommand));
  lines.push_back("config: " + resolved_json(cfg));
  for (const auto& w : cfg.warnings) lines.push_back("warning: " + w);
  return lines;
}

Problem problem_for(const RunConfig& cfg, double alpha) {
  return make_problem(cfg.problem, alpha, cfg.lambda, cfg.sigma);
}

CommandOutput solve_output(const RunConfig& cfg) {
  const Problem problem = problem_for(cfg, cfg.alpha);
  auto same = [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(y)); };
  if ((cfg.a && !same(*cfg.a, problem.a)) || (cfg.b && !same(*cfg.b, problem.b))) {
    std::ostringstream msg;
    msg << problem.name << " is defined on [" << problem.a << ", " << problem.b << "]";
    throw ConfigError(msg.str(), cfg.a ? "a" : "b");
  }
  const Grid1D grid(problem.a, problem.b, cfg.intervals);
  SchemeConfig scheme;
  scheme.tau = cfg.tau;
  scheme.dt = cfg.dt;
  scheme.t_end = cfg.t_end;
  scheme.snapshot_times = cfg.snapshot_times;
  const auto snapshots = run(problem, grid, scheme);

  CommandOutput out;
  out.path = cfg.output + "_solution.csv";
  out.table.comments = header(cfg);
  out.table.columns = {"t", "x", "u"};
  for (const auto& snap : snapshots) {
    out.table.comments.push_back("snapshot requested=" + format_number(snap.requested_time) +
                                 " time=" + format_number(snap.time) +
                                 " step=" + std::to_string(snap.step));
    if (problem.has_exact()) {
      out.table.comments.push_back(
          "linf_error t=" + format_number(snap.time) + " value=" +
          format_number(linf_error(snap.values, problem, grid, snap.time)));
    }
    for (long j = 0; j <= grid.intervals(); ++j) {
      out.table.rows.push_back({format_number(snap.time), format_number(grid.node(j)),
                                format_number(snap.values(j))});
    }
  }
  return out;
}

CommandOutput converge_output(const RunConfig& cfg) {
  ConvergenceStudy study;
  study.problem = [&cfg](double alpha) { return problem_for(cfg, alpha); };
  study.alphas = cfg.alphas;
  study.tau = cfg.tau;
  study.dxs = cfg.resolutions;
  study.coupling = StepCoupling{cfg.coupling_power, cfg.dt_factor};
  study.t_end = cfg.t_end;
  const auto rows = convergence_table(study);

  CommandOutput out;
  out.path = cfg.output + "_convergence.csv";
  out.table.comments = header(cfg);
  out.table.columns = {"dx", "dt", "alpha", "tau", "error", "rate"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.rate && !r.halving) {
      out.table.comments.push_back("row " + std::to_string(i + 1) +
                                   ": refinement is not 2x; rate = ln(error ratio)/ln(dx ratio)");
    }
    out.table.rows.push_back({format_number(r.dx), format_number(r.dt), format_number(r.alpha),
                              format_number(r.tau), format_number(r.error),
                              r.rate ? format_number(*r.rate) : std::string()});
  }
  return out;
}

CommandOutput stability_output(const RunConfig& cfg) {
  const auto rows = stability_sweep(cfg.alphas, cfg.taus, cfg.mus, cfg.theta_count);
  CommandOutput out;
  out.path = cfg.output + "_stability.csv";
  out.table.comments = header(cfg);
  out.table.comments.push_back("symbol: resummed series; theta grid: " +
                               std::to_string(cfg.theta_count) + " points on [-pi, pi)");
  out.table.columns = {"alpha", "tau", "mu", "max_kappa"};
  for (const auto& r : rows) {
    if (r.unstable) {
      out.table.comments.push_back("unstable alpha=" + format_number(r.alpha) +
                                   " tau=" + format_number(r.tau) + " mu=" + format_number(r.mu));
    }
    out.table.rows.push_back({format_number(r.alpha), format_number(r.tau),
                              format_number(r.mu), format_number(r.max_kappa)});
  }
  return out;
}

CommandOutput coeffs_output(const RunConfig& cfg) {
  const auto table = build_coeff_table(cfg.alpha, cfg.max_offset);
  CommandOutput out;
  out.path = cfg.output + "_coeffs.csv";
  out.table.comments = header(cfg);
  out.table.comments.push_back("gamma(4-alpha)=" + format_number(table.gamma4a()));
  out.table.columns = {"m", "q_m"};
  for (long m = -1; m <= table.max_offset(); ++m) {
    out.table.rows.push_back({std::to_string(m), format_number(table(m))});
  }
  return out;
}

CommandOutput compare_gl_output(const RunConfig& cfg) {
  ConvergenceStudy weighted;
  weighted.problem = [&cfg](double alpha) { return problem_for(cfg, alpha); };
  weighted.alphas = {cfg.alpha};
  weighted.tau = cfg.tau;
  weighted.dxs = cfg.resolutions;
  weighted.coupling = StepCoupling{cfg.coupling_power, cfg.dt_factor};
  weighted.t_end = cfg.t_end;

  // Crank-Nicolson with the shifted Grunwald-Letnikov operator and the
  // source at the half step.
  ConvergenceStudy baseline = weighted;
  baseline.tau = 0.5;
  baseline.spatial = SpatialOperator::kGlShifted;
  baseline.source = SourceWeighting::kMidpoint;

  const auto w = convergence_table(weighted);
  const auto g = convergence_table(baseline);

  CommandOutput out;
  out.path = cfg.output + "_compare_gl.csv";
  out.table.comments = header(cfg);
  out.table.columns = {"dx", "error_cn_gl", "error_weighted"};
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.table.rows.push_back(
        {format_number(w[i].dx), format_number(g[i].error), format_number(w[i].error)});
  }
  return out;
}

}  // namespace

CommandOutput build_output(const RunConfig& config) {
  switch (config.subcommand) {
    case Subcommand::kSolve:
      return solve_output(config);
    case Subcommand::kConverge:
      return converge_output(config);
    case Subcommand::kStability:
      return stability_output(config);
    case Subcommand::kCoeffs:
      return coeffs_output(config);
    case Subcommand::kCompareGl:
      return compare_gl_output(config);
  }
  throw ConfigError("unknown subcommand", "subcommand");
}

std::string run_subcommand(const RunConfig& config) {
  const auto out = build_output(config);
  write_csv(out.path, out.table);
  return out.path;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for the space-fractional diffusion equation "
               "(Riemann-Liouville derivative, 1 < alpha <= 2)",
               "fracdiff"};
  app.set_version_flag("--version", std::string(FRACDIFF_VERSION));

  std::string subcommand;
  std::string config_path;
  ConfigOverrides overrides;
  std::string alpha;
  std::string tau;
  std::string dt;
  std::string intervals;
  std::string prefix;

  app.add_option("subcommand", subcommand, "solve | converge | stability | coeffs | compare-gl")
      ->check(CLI::IsMember({"solve", "converge", "stability", "coeffs", "compare-gl"}));
  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", prefix, "output path prefix");
  app.add_option("--alpha", alpha, "order of the fractional derivative, in (1,2]");
  app.add_option("--tau", tau, "time weight");
  app.add_option("--dt", dt, "time step (number or fraction such as 1/30)");
  app.add_option("--n", intervals, "number of spatial intervals N");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (!subcommand.empty()) overrides.subcommand = subcommand;
  if (!alpha.empty()) overrides.alpha = alpha;
  if (!tau.empty()) overrides.tau = tau;
  if (!dt.empty()) overrides.dt = dt;
  if (!intervals.empty()) overrides.intervals = intervals;
  if (!prefix.empty()) overrides.output = prefix;

  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream file(config_path, std::ios::binary);
      std::ostringstream buf;
      buf << file.rdbuf();
      text = buf.str();
    }
    const RunConfig config = parse_config(text, overrides);
    for (const auto& w : config.warnings) err << "warning: " << w << '\n';
    const auto path = run_subcommand(config);
    out << "wrote " << path << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const SingularMatrixError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fracdiff
