#include <cmath>
#include <numbers>

#include "fracdiff/coefficients.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/problem.hpp"
#include "fracdiff/special.hpp"

namespace fracdiff {

namespace {

void check_left_boundary(const Problem& problem) {
  const double fa = problem.initial(problem.a);
  if (!(std::abs(fa) <= kLeftBoundaryTolerance)) {
    throw DomainError(problem.name + ": initial condition violates u(a,0) = 0");
  }
}

}  // namespace

Problem example1(double alpha) {
  require_order(alpha, "example1");
  Problem p;
  p.name = "example1";
  p.alpha = alpha;
  p.a = 0.0;
  p.b = 2.0;
  const double scale = 0.25 * gamma(5.0 - alpha);
  p.diffusion = [scale, alpha](double x) { return scale * std::pow(x, alpha); };
  p.source = [alpha](double x, double t) {
    const double w = 2.0 - x;
    return -4.0 * std::exp(-t) * x * x *
           (7.0 * w * w + 2.0 * alpha * (alpha - 7.0) + 6.0 * x * alpha);
  };
  p.initial = [](double x) {
    if (x <= 0.0 || x >= 2.0) return 0.0;
    const double w = 2.0 - x;
    return 4.0 * x * x * w * w;
  };
  p.right_boundary = [](double) { return 0.0; };
  p.exact = [](double x, double t) {
    if (x <= 0.0 || x >= 2.0) return 0.0;
    const double w = 2.0 - x;
    return 4.0 * std::exp(-t) * x * x * w * w;
  };
  check_left_boundary(p);
  return p;
}

Problem example2(double alpha, double lambda) {
  require_order(alpha, "example2");
  if (!(lambda + 1.0 - alpha > 0.0)) {
    throw DomainError("example2: requires lambda + 1 - alpha > 0");
  }
  Problem p;
  p.name = "example2";
  p.alpha = alpha;
  p.a = 0.0;
  p.b = 1.0;
  const double scale = gamma(lambda + 1.0 - alpha) / gamma(lambda + 1.0);
  p.diffusion = [scale, alpha](double x) { return scale * std::pow(x, alpha + 1.0); };
  p.source = [lambda](double x, double t) {
    return -(1.0 + x) * std::exp(-t) * std::pow(x, lambda);
  };
  p.initial = [lambda](double x) { return x <= 0.0 ? 0.0 : std::pow(x, lambda); };
  p.right_boundary = [](double t) { return std::exp(-t); };
  p.exact = [lambda](double x, double t) {
    return x <= 0.0 ? 0.0 : std::exp(-t) * std::pow(x, lambda);
  };
  check_left_boundary(p);
  return p;
}

Problem example3(double alpha, double sigma) {
  require_order(alpha, "example3");
  if (!(sigma > 0.0)) throw DomainError("example3: sigma must be positive");
  Problem p;
  p.name = "example3";
  p.alpha = alpha;
  p.a = 0.0;
  p.b = 4.0;
  p.diffusion = [](double) { return 1.0; };
  p.source = [](double, double) { return 0.0; };
  const double peak = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  p.initial = [peak, sigma](double x) {
    const double r = x - 2.0;
    return peak * std::exp(-r * r / (2.0 * sigma * sigma));
  };
  p.right_boundary = [](double) { return 0.0; };
  check_left_boundary(p);
  return p;
}

Problem make_problem(const std::string& name, double alpha, double lambda,
                     double sigma) {
  if (name == "example1") return example1(alpha);
  if (name == "example2") return example2(alpha, lambda);
  if (name == "example3") return example3(alpha, sigma);
  throw DomainError("unknown problem '" + name + "'");
}

}  // namespace fracdiff
