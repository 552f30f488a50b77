#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "fracdiff/grid.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/scheme.hpp"

namespace fracdiff {

// max_j |exact(x_j, t) - U_j| over all N+1 nodes. Throws DomainError if the
// problem has no exact solution or the vector length does not match.
double linf_error(const Vector& numeric, const Problem& problem,
                  const Grid1D& grid, double t);

// dt = factor * dx^power. power is 1 (dt ~ dx) or 2 (dt ~ dx^2).
struct StepCoupling {
  int power = 1;
  double factor = 1.0;

  double dt(double dx) const;
};

struct ConvergenceRow {
  double dx = 0.0;
  double dt = 0.0;
  double alpha = 0.0;
  double tau = 0.0;
  double error = 0.0;
  // Absent on the first row of each alpha block.
  std::optional<double> rate;
  // True when dx was refined by exactly 2 relative to the previous row.
  bool halving = false;
};

// Fills rate/halving for consecutive rows sharing the same alpha:
// rate = ln(e_prev/e) / ln(dx_prev/dx).
void compute_rates(std::vector<ConvergenceRow>& rows);

struct ConvergenceStudy {
  std::function<Problem(double alpha)> problem;
  std::vector<double> alphas;
  double tau = 0.5;
  std::vector<double> dxs;
  StepCoupling coupling;
  double t_end = 1.0;
  SpatialOperator spatial = SpatialOperator::kSpline;
  SourceWeighting source = SourceWeighting::kWeighted;
};

// Solves at each (alpha, dx) and records the l-infinity error at t_end.
// dx must divide the problem domain into an integer number of intervals.
std::vector<ConvergenceRow> convergence_table(const ConvergenceStudy& study);

// Symbol of the operator: z(theta) = 1/Gamma(4-alpha) sum_m q_m e^{-i m theta}.
using Complex = std::complex<double>;

// Partial sum over m = -1..M.
Complex symbol_truncated(double alpha, double theta, long max_offset);

// The full series, resummed through the polylogarithm identity
// sum_m q_m w^m = (w + 1/w - 2)^2 Li_{alpha-3}(w) and evaluated with the
// Hurwitz zeta function. Exact up to rounding.
Complex symbol_resummed(double alpha, double theta);

// Neglected tail of the truncated symbol, sum_{m>M} q_m / Gamma(4-alpha);
// bounds |symbol_resummed - symbol_truncated| since q_m >= 0 for m >= 2.
double symbol_tail_bound(double alpha, long max_offset);

struct Truncation {
  long max_offset = 0;
  double tail_bound = 0.0;
};

inline constexpr double kSymbolTailTarget = 1e-10;
inline constexpr long kMaxSymbolTruncation = 10000;

// Smallest M with tail bound below kSymbolTailTarget, capped at
// kMaxSymbolTruncation (the bound is then reported as is).
Truncation default_truncation(double alpha);

struct AmplificationResult {
  double theta = 0.0;
  Complex symbol;
  Complex kappa;
  double modulus = 0.0;
  // 0 for the resummed symbol.
  long max_offset = 0;
  double tail_bound = 0.0;
};

// kappa = (1 + (1-tau) mu z) / (1 - tau mu z) with the resummed symbol.
AmplificationResult amplification_factor(double alpha, double tau, double mu,
                                         double theta);

// Same with the symbol truncated at max_offset.
AmplificationResult amplification_factor(double alpha, double tau, double mu,
                                         double theta, long max_offset);

enum class SymbolEvaluation { kResummed, kTruncated };

struct StabilityRow {
  double alpha = 0.0;
  double tau = 0.0;
  double mu = 0.0;
  double max_kappa = 0.0;
  // max over theta of Re z(theta) * Gamma(4-alpha) = sum_m q_m cos(m theta).
  double max_symbol_real = 0.0;
  double tail_bound = 0.0;
  bool unstable = false;
};

inline constexpr double kStabilitySlack = 1e-12;

// theta_k = -pi + 2 pi k / theta_count, k = 0..theta_count-1 (includes 0
// when theta_count is even). Rows come back in alphas x taus x mus order.
std::vector<double> theta_grid(long theta_count);

std::vector<StabilityRow> stability_sweep(
    const std::vector<double>& alphas, const std::vector<double>& taus,
    const std::vector<double>& mus, long theta_count,
    SymbolEvaluation evaluation = SymbolEvaluation::kResummed);

// q_1(alpha) = 3^(3-alpha) - 4 2^(3-alpha) + 6, the sub-diagonal coefficient.
double subdiagonal_coefficient(double alpha);

// Root of q_1 in (1,2) by bisection to 1e-10. For alpha above it all
// off-diagonal entries of Q are non-negative and Gerschgorin discs of the
// iteration matrix certify stability.
double gerschgorin_threshold();

struct GerschgorinDiagnostic {
  double alpha = 0.0;
  double subdiagonal = 0.0;
  bool applies = false;
};

GerschgorinDiagnostic gerschgorin_diagnostic(double alpha);

}  // namespace fracdiff
