#include "fracdiff/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"

namespace fracdiff {

namespace {

constexpr double kSnapTolerance = 1e-9;

long nearest_step(double t, double dt) {
  return static_cast<long>(std::llround(t / dt));
}

Vector sample_source(const Problem& problem, const Grid1D& grid, double t) {
  const long n = grid.interior_size();
  Vector p(n);
  for (long j = 1; j <= n; ++j) p(j - 1) = problem.source(grid.node(j), t);
  return p;
}

}  // namespace

std::vector<std::string> validate(const SchemeConfig& config) {
  std::vector<std::string> warnings;
  if (!(config.tau >= kMinTau && config.tau <= kMaxTau)) {
    throw DomainError("tau must lie in [0,2]");
  }
  if (config.tau < 0.5 || config.tau > 1.0) {
    std::ostringstream msg;
    msg << "tau = " << config.tau
        << " is outside [1/2,1]; unconditional stability is not guaranteed";
    warnings.push_back(msg.str());
  }
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw DomainError("dt must be positive");
  }
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    throw DomainError("t_end must be non-negative");
  }
  if (config.t_end > 0.0 && config.dt > config.t_end * (1.0 + kSnapTolerance)) {
    throw DomainError("dt must not exceed t_end");
  }
  for (double t : config.snapshot_times) {
    if (!(t >= 0.0 && t <= config.t_end * (1.0 + kSnapTolerance))) {
      throw DomainError("snapshot times must lie in [0, t_end]");
    }
  }
  return warnings;
}

SchemeSystem assemble(const Problem& problem, const Grid1D& grid,
                      const SchemeConfig& config) {
  require_order(problem.alpha, "assemble");
  SchemeSystem system(grid, config);
  system.warnings_ = validate(config);

  if (!(std::abs(problem.initial(grid.a())) <= kLeftBoundaryTolerance)) {
    throw DomainError("assemble: problem requires u(a,0) = 0");
  }

  const double alpha = problem.alpha;
  system.alpha_ = alpha;
  const long n = grid.interior_size();
  const long max_offset = grid.intervals();

  system.q_ = Matrix::Zero(n, n);
  if (config.spatial == SpatialOperator::kSpline) {
    const auto table = build_coeff_table(alpha, max_offset);
    system.normalization_ = table.gamma4a();
    system.boundary_coefficient_ = table(-1);
    for (long j = 0; j < n; ++j) {
      for (long k = 0; k <= std::min(j + 1, n - 1); ++k) system.q_(j, k) = table(j - k);
    }
  } else {
    const auto weights = build_gl_shifted_weights(alpha, max_offset);
    system.normalization_ = 1.0;
    system.boundary_coefficient_ = weights(0);
    for (long j = 0; j < n; ++j) {
      for (long k = 0; k <= std::min(j + 1, n - 1); ++k) system.q_(j, k) = weights(j - k + 1);
    }
  }

  system.mu_.resize(n);
  const double scale = config.dt / std::pow(grid.dx(), alpha);
  for (long j = 1; j <= n; ++j) {
    const double d = problem.diffusion(grid.node(j));
    if (!(d > 0.0) || !std::isfinite(d)) {
      std::ostringstream msg;
      msg << "assemble: diffusion coefficient must be positive at x = " << grid.node(j);
      throw DomainError(msg.str());
    }
    system.mu_(j - 1) = d * scale;
  }

  const Matrix scaled = (system.mu_ / system.normalization_).asDiagonal() * system.q_;
  const Matrix identity = Matrix::Identity(n, n);
  system.a_ = identity - config.tau * scaled;
  system.b_ = identity + (1.0 - config.tau) * scaled;
  system.lu_.compute(system.a_);
  return system;
}

Vector SolverState::nodal() const {
  Vector u(interior.size() + 2);
  u(0) = left;
  u.segment(1, interior.size()) = interior;
  u(u.size() - 1) = right;
  return u;
}

SolverState initial_state(const Problem& problem, const Grid1D& grid) {
  SolverState state;
  state.interior.resize(grid.interior_size());
  for (long j = 1; j < grid.intervals(); ++j) {
    state.interior(j - 1) = problem.initial(grid.node(j));
  }
  state.right = problem.right_boundary(0.0);
  return state;
}

SolverState step(const SolverState& state, const SchemeSystem& system,
                 const Problem& problem) {
  const auto& config = system.config();
  const auto& grid = system.grid();
  const long n = grid.interior_size();
  if (state.interior.size() != n) {
    throw DomainError("step: state does not match the assembled grid");
  }
  const double dt = config.dt;
  const double tau = config.tau;
  const double t_now = static_cast<double>(state.step) * dt;
  const double t_next = static_cast<double>(state.step + 1) * dt;

  Vector rhs = system.explicit_matrix() * state.interior;

  const double boundary_now = problem.right_boundary(t_now);
  const double boundary_next = problem.right_boundary(t_next);
  rhs(n - 1) += system.mu()(n - 1) / system.normalization() *
                system.boundary_coefficient() *
                (tau * boundary_next + (1.0 - tau) * boundary_now);

  if (config.source == SourceWeighting::kWeighted) {
    rhs += dt * (tau * sample_source(problem, grid, t_next) +
                 (1.0 - tau) * sample_source(problem, grid, t_now));
  } else {
    rhs += dt * sample_source(problem, grid, 0.5 * (t_now + t_next));
  }

  SolverState next;
  next.step = state.step + 1;
  next.time = t_next;
  next.interior = system.factorization().solve(rhs);
  next.left = 0.0;
  next.right = boundary_next;
  if (!next.interior.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite solution at step " << next.step << " (t = " << t_next << ")";
    throw NumericalFailure(msg.str());
  }
  return next;
}

std::vector<Snapshot> run(const Problem& problem, const Grid1D& grid,
                          const SchemeConfig& config) {
  return run(problem, assemble(problem, grid, config));
}

std::vector<Snapshot> run(const Problem& problem, const SchemeSystem& system) {
  const auto& config = system.config();
  std::vector<double> times = config.snapshot_times;
  if (times.empty()) times.push_back(config.t_end);

  std::vector<long> targets;
  targets.reserve(times.size());
  for (double t : times) targets.push_back(nearest_step(t, config.dt));
  const long last = *std::max_element(targets.begin(), targets.end());

  std::vector<Snapshot> out(times.size());
  auto record = [&](const SolverState& state) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (targets[i] == state.step) {
        out[i] = Snapshot{times[i], static_cast<double>(state.step) * config.dt,
                          state.step, state.nodal()};
      }
    }
  };

  SolverState state = initial_state(problem, system.grid());
  record(state);
  while (state.step < last) {
    state = step(state, system, problem);
    record(state);
  }
  return out;
}

}  // namespace fracdiff
