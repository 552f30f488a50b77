#include "fracdiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracdiff/coefficients.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/special.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = std::numbers::pi;

// Reduce to (-pi, pi].
double wrap_angle(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

long intervals_for(const Problem& problem, double dx) {
  const double length = problem.b - problem.a;
  const double n = length / dx;
  const long rounded = std::lround(n);
  if (rounded < 2 || std::abs(n - static_cast<double>(rounded)) > 1e-9 * n) {
    std::ostringstream msg;
    msg << "dx = " << dx << " does not divide [" << problem.a << ", "
        << problem.b << "] into an integer number of intervals";
    throw DomainError(msg.str());
  }
  return rounded;
}

// sum_{m=-1}^{M} q_m w^m / Gamma(4-alpha) with w = e^{-i theta}, by Horner
// from the smallest coefficients up.
Complex horner_symbol(const FracCoeffTable<double>& table, double theta) {
  const Complex w(std::cos(theta), -std::sin(theta));
  Complex acc(0.0, 0.0);
  for (long m = table.max_offset(); m >= -1; --m) acc = acc * w + table(m);
  return acc * std::conj(w) / table.gamma4a();
}

}  // namespace

double linf_error(const Vector& numeric, const Problem& problem,
                  const Grid1D& grid, double t) {
  if (!problem.has_exact()) {
    throw DomainError("linf_error: problem '" + problem.name + "' has no exact solution");
  }
  if (numeric.size() != grid.intervals() + 1) {
    throw DomainError("linf_error: vector length does not match grid");
  }
  double err = 0.0;
  for (long j = 0; j <= grid.intervals(); ++j) {
    err = std::max(err, std::abs((*problem.exact)(grid.node(j), t) - numeric(j)));
  }
  return err;
}

double StepCoupling::dt(double dx) const {
  if (power != 1 && power != 2) throw DomainError("StepCoupling: power must be 1 or 2");
  if (!(factor > 0.0)) throw DomainError("StepCoupling: factor must be positive");
  return factor * (power == 1 ? dx : dx * dx);
}

void compute_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate.reset();
    rows[i].halving = false;
    if (i == 0 || rows[i - 1].alpha != rows[i].alpha) continue;
    const auto& prev = rows[i - 1];
    const double refinement = prev.dx / rows[i].dx;
    if (!(refinement > 0.0) || refinement == 1.0) continue;
    rows[i].halving = std::abs(refinement - 2.0) <= 1e-12;
    if (rows[i].halving) {
      rows[i].rate = std::log2(prev.error / rows[i].error);
    } else {
      rows[i].rate = std::log(prev.error / rows[i].error) / std::log(refinement);
    }
  }
}

std::vector<ConvergenceRow> convergence_table(const ConvergenceStudy& study) {
  if (!study.problem) throw DomainError("convergence_table: no problem factory");
  std::vector<ConvergenceRow> rows;
  for (double alpha : study.alphas) {
    const Problem problem = study.problem(alpha);
    for (double dx : study.dxs) {
      const Grid1D grid(problem.a, problem.b, intervals_for(problem, dx));
      SchemeConfig config;
      config.tau = study.tau;
      config.dt = study.coupling.dt(grid.dx());
      config.t_end = study.t_end;
      config.spatial = study.spatial;
      config.source = study.source;
      const auto snaps = run(problem, grid, config);
      ConvergenceRow row;
      row.dx = grid.dx();
      row.dt = config.dt;
      row.alpha = alpha;
      row.tau = study.tau;
      row.error = linf_error(snaps.back().values, problem, grid, snaps.back().time);
      rows.push_back(row);
    }
  }
  compute_rates(rows);
  return rows;
}

Complex symbol_truncated(double alpha, double theta, long max_offset) {
  const auto table = build_coeff_table(alpha, max_offset);
  return horner_symbol(table, theta);
}

Complex symbol_resummed(double alpha, double theta) {
  require_order(alpha, "symbol_resummed");
  const double th = wrap_angle(theta);
  if (th == 0.0) return {0.0, 0.0};
  // z(-theta) = conj(z(theta)) since the q_m are real.
  const double abs_th = std::abs(th);
  const double v = abs_th / (2.0 * kPi);  // in (0, 1/2]
  const double sigma = 4.0 - alpha;
  const double s = std::sin(0.5 * abs_th);
  const double s2 = s * s;
  const double prefactor = 16.0 * s2 * s2 / std::pow(2.0 * kPi, sigma);
  const double near = hurwitz_zeta(sigma, v);
  const double far = hurwitz_zeta(sigma, 1.0 - v);
  const double c = std::cos(0.5 * kPi * sigma);
  const double sn = std::sin(0.5 * kPi * sigma);
  const Complex z(prefactor * c * (far + near), prefactor * sn * (far - near));
  return th > 0.0 ? z : std::conj(z);
}

double symbol_tail_bound(double alpha, long max_offset) {
  return -partial_sum_residual(alpha, max_offset) / gamma(4.0 - alpha);
}

Truncation default_truncation(double alpha) {
  require_order(alpha, "default_truncation");
  auto bound = [alpha](long m) { return std::abs(symbol_tail_bound(alpha, m)); };
  if (bound(kMaxSymbolTruncation) >= kSymbolTailTarget) {
    return {kMaxSymbolTruncation, bound(kMaxSymbolTruncation)};
  }
  // The tail is monotone in M; bisect for the smallest admissible M.
  long lo = 2;
  long hi = kMaxSymbolTruncation;
  if (bound(lo) < kSymbolTailTarget) return {lo, bound(lo)};
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (bound(mid) < kSymbolTailTarget ? hi : lo) = mid;
  }
  return {hi, bound(hi)};
}

namespace {

AmplificationResult make_result(double tau, double mu, double theta, Complex z) {
  if (!(mu > 0.0)) throw DomainError("amplification_factor: mu must be positive");
  AmplificationResult r;
  r.theta = theta;
  r.symbol = z;
  r.kappa = (1.0 + (1.0 - tau) * mu * z) / (1.0 - tau * mu * z);
  r.modulus = std::abs(r.kappa);
  return r;
}

}  // namespace

AmplificationResult amplification_factor(double alpha, double tau, double mu,
                                         double theta) {
  return make_result(tau, mu, theta, symbol_resummed(alpha, theta));
}

AmplificationResult amplification_factor(double alpha, double tau, double mu,
                                         double theta, long max_offset) {
  auto r = make_result(tau, mu, theta, symbol_truncated(alpha, theta, max_offset));
  r.max_offset = max_offset;
  r.tail_bound = symbol_tail_bound(alpha, max_offset);
  return r;
}

std::vector<double> theta_grid(long theta_count) {
  if (theta_count < 1) throw DomainError("theta_grid: need at least one angle");
  std::vector<double> thetas(theta_count);
  for (long k = 0; k < theta_count; ++k) {
    thetas[k] = -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(theta_count);
  }
  return thetas;
}

namespace {

std::vector<Complex> truncated_symbols(double alpha, const std::vector<double>& thetas,
                                       long max_offset) {
  const auto table = build_coeff_table(alpha, max_offset);
  std::vector<Complex> out;
  out.reserve(thetas.size());
  for (double th : thetas) out.push_back(horner_symbol(table, th));
  return out;
}

}  // namespace

std::vector<StabilityRow> stability_sweep(const std::vector<double>& alphas,
                                          const std::vector<double>& taus,
                                          const std::vector<double>& mus,
                                          long theta_count,
                                          SymbolEvaluation evaluation) {
  if (alphas.empty() || taus.empty() || mus.empty()) {
    throw DomainError("stability_sweep: parameter lists must be non-empty");
  }
  const auto thetas = theta_grid(theta_count);
  std::vector<StabilityRow> rows;
  rows.reserve(alphas.size() * taus.size() * mus.size());
  for (double alpha : alphas) {
    require_order(alpha, "stability_sweep");
    std::vector<Complex> symbols;
    double tail = 0.0;
    if (evaluation == SymbolEvaluation::kResummed) {
      symbols.reserve(thetas.size());
      for (double th : thetas) symbols.push_back(symbol_resummed(alpha, th));
    } else {
      const auto trunc = default_truncation(alpha);
      tail = trunc.tail_bound;
      symbols = truncated_symbols(alpha, thetas, trunc.max_offset);
    }
    const double g = gamma(4.0 - alpha);
    double max_real = -std::numeric_limits<double>::infinity();
    for (const auto& z : symbols) max_real = std::max(max_real, z.real() * g);

    for (double tau : taus) {
      for (double mu : mus) {
        if (!(mu > 0.0)) throw DomainError("stability_sweep: mu must be positive");
        double max_kappa = 0.0;
        for (const auto& z : symbols) {
          const Complex kappa = (1.0 + (1.0 - tau) * mu * z) / (1.0 - tau * mu * z);
          max_kappa = std::max(max_kappa, std::abs(kappa));
        }
        StabilityRow row;
        row.alpha = alpha;
        row.tau = tau;
        row.mu = mu;
        row.max_kappa = max_kappa;
        row.max_symbol_real = max_real;
        row.tail_bound = tail;
        row.unstable = max_kappa > 1.0 + kStabilitySlack;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

double subdiagonal_coefficient(double alpha) { return spline_q_coeff(1, alpha); }

double gerschgorin_threshold() {
  double lo = 1.0;
  double hi = 2.0;
  // q_1(1) = -1 < 0 < 1 = q_1(2).
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (subdiagonal_coefficient(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

GerschgorinDiagnostic gerschgorin_diagnostic(double alpha) {
  require_order(alpha, "gerschgorin_diagnostic");
  GerschgorinDiagnostic d;
  d.alpha = alpha;
  d.subdiagonal = subdiagonal_coefficient(alpha);
  d.applies = d.subdiagonal >= 0.0;
  return d;
}

}  // namespace fracdiff
