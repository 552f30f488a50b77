#pragma once

// Independent reference implementations used by the tests. Nothing here
// calls into the library's assembly or factorization code.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Thomas algorithm for sub/diag/super bands of length n (sub[0] and
// super[n-1] unused).
inline std::vector<double> thomas(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> super, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
  return x;
}

struct HeatProblem {
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> diffusion;
  std::function<double(double, double)> source;
  std::function<double(double)> initial;
  std::function<double(double)> right_boundary;
};

// Classical theta-scheme for u_t = d(x) u_xx + p with u(a) = 0, u(b) = g_b:
// weight tau on the new level for the operator, source and boundary data.
// Returns the nodal values U_0..U_N after `steps` steps.
inline std::vector<double> theta_scheme(const HeatProblem& pb, long n, double tau, double dt,
                                        long steps) {
  const double dx = (pb.b - pb.a) / static_cast<double>(n);
  auto x = [&](long j) { return j == n ? pb.b : pb.a + dx * static_cast<double>(j); };
  std::vector<double> u(n + 1);
  for (long j = 0; j <= n; ++j) u[j] = pb.initial(x(j));
  u[0] = 0.0;
  u[n] = pb.right_boundary(0.0);
  const long m = n - 1;
  for (long s = 0; s < steps; ++s) {
    const double t0 = dt * static_cast<double>(s);
    const double t1 = dt * static_cast<double>(s + 1);
    std::vector<double> sub(m), diag(m), super(m), rhs(m);
    const double g1 = pb.right_boundary(t1);
    for (long i = 0; i < m; ++i) {
      const long j = i + 1;
      const double r = pb.diffusion(x(j)) * dt / (dx * dx);
      sub[i] = -tau * r;
      diag[i] = 1.0 + 2.0 * tau * r;
      super[i] = -tau * r;
      const double lap = u[j + 1] - 2.0 * u[j] + u[j - 1];
      rhs[i] = u[j] + (1.0 - tau) * r * lap +
               dt * (tau * pb.source(x(j), t1) + (1.0 - tau) * pb.source(x(j), t0));
      if (j == n - 1) rhs[i] += tau * r * g1;
    }
    const auto v = thomas(sub, diag, super, rhs);
    for (long i = 0; i < m; ++i) u[i + 1] = v[i];
    u[n] = g1;
  }
  return u;
}

// Gaussian elimination with partial pivoting on a dense row-major copy.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
    }
    if (a[p][k] == 0.0) throw std::runtime_error("dense_solve: singular");
    std::swap(a[p], a[k]);
    std::swap(b[p], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double w = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= w * a[k][j];
      b[i] -= w * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Direct (unsimplified) spline coefficient q_m from the fourth difference of
// max(k,0)^(3-alpha); exact in long double for small m.
inline long double direct_q(long m, double alpha) {
  const long double e = 3.0L - alpha;
  auto p = [e](long k) { return k <= 0 ? 0.0L : std::pow(static_cast<long double>(k), e); };
  return p(m + 2) - 4.0L * p(m + 1) + 6.0L * p(m) - 4.0L * p(m - 1) + p(m - 2);
}

}  // namespace oracle
