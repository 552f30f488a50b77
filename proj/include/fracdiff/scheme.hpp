#pragma once

// Weighted tau-scheme in matrix form,
//
//   A U^{n+1} = B U^n + (M/G)(tau b^{n+1} + (1-tau) b^n)
//               + dt (tau p^{n+1} + (1-tau) p^n),
//
// with A = I - tau (M/G) Q, B = I + (1-tau)(M/G) Q, M = diag(d_j dt/dx^alpha)
// and G = Gamma(4-alpha). Q is lower Hessenberg (one superdiagonal), so A is
// factored once in O(N^2) and reused every step.

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "fracdiff/coefficients.hpp"
#include "fracdiff/grid.hpp"
#include "fracdiff/hessenberg.hpp"
#include "fracdiff/problem.hpp"

namespace fracdiff {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class SpatialOperator {
  kSpline,     // second-order spline discretization
  kGlShifted,  // first-order shifted Grunwald-Letnikov baseline
};

enum class SourceWeighting {
  kWeighted,  // tau p^{n+1} + (1-tau) p^n
  kMidpoint,  // p^{n+1/2}
};

struct SchemeConfig {
  double tau = 0.5;
  double dt = 0.0;
  double t_end = 1.0;
  // Empty means {t_end}.
  std::vector<double> snapshot_times;
  SpatialOperator spatial = SpatialOperator::kSpline;
  SourceWeighting source = SourceWeighting::kWeighted;
};

// Accepted range of the weight tau. Only [1/2,1] is proven stable; the rest
// of the range runs with a warning.
inline constexpr double kMinTau = 0.0;
inline constexpr double kMaxTau = 2.0;

// Validates a scheme configuration. Throws DomainError for tau outside
// [kMinTau,kMaxTau], non-positive dt, negative t_end, dt > t_end (when
// t_end > 0) or snapshot times outside [0, t_end]. Returns warnings for
// accepted but unproven settings (tau outside [1/2,1]).
std::vector<std::string> validate(const SchemeConfig& config);

class SchemeSystem {
 public:
  const Grid1D& grid() const noexcept { return grid_; }
  const SchemeConfig& config() const noexcept { return config_; }
  double alpha() const noexcept { return alpha_; }

  // Interior (N-1)x(N-1) operator matrix, lower Hessenberg.
  const Matrix& q() const noexcept { return q_; }
  const Matrix& implicit_matrix() const noexcept { return a_; }
  const Matrix& explicit_matrix() const noexcept { return b_; }
  // mu_j = d(x_j) dt / dx^alpha at interior nodes.
  const Vector& mu() const noexcept { return mu_; }
  // Gamma(4-alpha) for the spline operator, 1 for the GL baseline.
  double normalization() const noexcept { return normalization_; }
  // Coefficient of U_N in the last interior row of Q (q_{-1} or g_0).
  double boundary_coefficient() const noexcept { return boundary_coefficient_; }
  const LowerHessenbergLU<double>& factorization() const noexcept { return lu_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend SchemeSystem assemble(const Problem&, const Grid1D&, const SchemeConfig&);

  SchemeSystem(const Grid1D& grid, SchemeConfig config)
      : grid_(grid), config_(std::move(config)) {}

  Grid1D grid_;
  SchemeConfig config_;
  double alpha_ = 2.0;
  Matrix q_;
  Matrix a_;
  Matrix b_;
  Vector mu_;
  double normalization_ = 1.0;
  double boundary_coefficient_ = 1.0;
  LowerHessenbergLU<double> lu_;
  std::vector<std::string> warnings_;
};

// Builds and factors the scheme matrices. Rejects alpha outside (1,2],
// initial data with f(a) != 0 and non-positive d at interior nodes.
SchemeSystem assemble(const Problem& problem, const Grid1D& grid,
                      const SchemeConfig& config);

struct SolverState {
  long step = 0;
  double time = 0.0;
  Vector interior;           // U_1..U_{N-1}
  double left = 0.0;         // U_0, always 0
  double right = 0.0;        // U_N = g_b(t_n)

  // U_0..U_N.
  Vector nodal() const;
};

SolverState initial_state(const Problem& problem, const Grid1D& grid);

// Advances one time step. Throws NumericalFailure on non-finite values.
SolverState step(const SolverState& state, const SchemeSystem& system,
                 const Problem& problem);

struct Snapshot {
  double requested_time = 0.0;
  double time = 0.0;  // time of the step actually reported
  long step = 0;
  Vector values;      // U_0..U_N
};

// Time-steps from t = 0 and reports the solution at each snapshot time,
// snapped to the nearest time step. Snapshots come back in the order given.
std::vector<Snapshot> run(const Problem& problem, const Grid1D& grid,
                          const SchemeConfig& config);

// Same, reusing an assembled system.
std::vector<Snapshot> run(const Problem& problem, const SchemeSystem& system);

}  // namespace fracdiff
