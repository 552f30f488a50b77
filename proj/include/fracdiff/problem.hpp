#pragma once

#include <functional>
#include <optional>
#include <string>

namespace fracdiff {

// du/dt = d(x) D^alpha u + p(x,t) on [a,b] with u(a,t) = 0, u(b,t) = g_b(t),
// u(x,0) = f(x), where D^alpha is the Riemann-Liouville derivative of order
// alpha with the solution continued by zero to the left of a.
struct Problem {
  std::string name;
  double alpha = 2.0;
  double a = 0.0;
  double b = 1.0;
  std::function<double(double)> diffusion;
  std::function<double(double, double)> source;
  std::function<double(double)> initial;
  std::function<double(double)> right_boundary;
  std::optional<std::function<double(double, double)>> exact;

  bool has_exact() const noexcept { return exact.has_value(); }
};

// Left-boundary compatibility tolerance: |f(a)| must not exceed this.
inline constexpr double kLeftBoundaryTolerance = 1e-12;

// Worked examples. Each validates its parameters and the compatibility
// condition f(a) = 0 on construction.

// Domain [0,2], d = Gamma(5-alpha) x^alpha / 4, exact 4 e^-t x^2 (2-x)^2.
Problem example1(double alpha);

// Domain [0,1], d = Gamma(lambda+1-alpha)/Gamma(lambda+1) x^(alpha+1),
// g_b = e^-t, exact e^-t x^lambda.
Problem example2(double alpha, double lambda = 3.0);

// Domain [0,4], d = 1, p = 0, Gaussian of width sigma centred at x = 2,
// homogeneous boundaries, no exact solution.
Problem example3(double alpha, double sigma = 0.01);

// Lookup by name ("example1", "example2", "example3").
Problem make_problem(const std::string& name, double alpha, double lambda,
                     double sigma);

}  // namespace fracdiff
