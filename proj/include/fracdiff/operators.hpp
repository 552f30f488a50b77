#pragma once

// Dense application of the discrete fractional operators to grid vectors.
// Inputs hold the N+1 nodal values U_0..U_N with U_0 = 0 (the solution
// vanishes left of the domain, so the infinite series truncates exactly).
// Results hold the N-1 interior values j = 1..N-1 and approximate
// dx^alpha times the Riemann-Liouville derivative.

#include <Eigen/Core>

#include "fracdiff/coefficients.hpp"
#include "fracdiff/errors.hpp"

namespace fracdiff {

template <typename Derived>
using PlainVector = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Derived>
void require_grid_vector(const Eigen::MatrixBase<Derived>& u, const char* who) {
  if (u.cols() != 1 || u.size() < 3) {
    throw DomainError(std::string(who) + ": expected a column of N+1 >= 3 values");
  }
  if (u(0) != typename Derived::Scalar(0)) {
    throw DomainError(std::string(who) + ": U_0 must be 0");
  }
}

}  // namespace detail

// (delta_alpha U)_j = 1/Gamma(4-alpha) * sum_{m=-1}^{j} q_m U_{j-m}.
template <typename Derived>
PlainVector<Derived> apply_spline_operator(
    const Eigen::MatrixBase<Derived>& u,
    const FracCoeffTable<typename Derived::Scalar>& table) {
  using Scalar = typename Derived::Scalar;
  detail::require_grid_vector(u, "apply_spline_operator");
  const long n = static_cast<long>(u.size()) - 1;
  if (table.max_offset() < n) {
    throw DomainError("apply_spline_operator: coefficient table shorter than grid");
  }
  PlainVector<Derived> out(n - 1);
  for (long j = 1; j < n; ++j) {
    Scalar acc(0);
    for (long m = j; m >= -1; --m) acc += table(m) * u(j - m);
    out(j - 1) = acc / table.gamma4a();
  }
  return out;
}

// Shifted Grunwald-Letnikov: sum_{k=0}^{j+1} g_k U_{j-k+1}.
template <typename Derived>
PlainVector<Derived> apply_gl_shifted_operator(
    const Eigen::MatrixBase<Derived>& u,
    const GlWeightTable<typename Derived::Scalar>& weights) {
  using Scalar = typename Derived::Scalar;
  detail::require_grid_vector(u, "apply_gl_shifted_operator");
  const long n = static_cast<long>(u.size()) - 1;
  if (weights.max_index() < n) {
    throw DomainError("apply_gl_shifted_operator: weight table shorter than grid");
  }
  PlainVector<Derived> out(n - 1);
  for (long j = 1; j < n; ++j) {
    Scalar acc(0);
    for (long k = j + 1; k >= 0; --k) acc += weights(k) * u(j - k + 1);
    out(j - 1) = acc;
  }
  return out;
}

// Unshifted Grunwald-Letnikov: sum_{k=0}^{j} g_k U_{j-k}. Only used to
// demonstrate that the unshifted implicit scheme is unstable.
template <typename Derived>
PlainVector<Derived> apply_gl_unshifted_operator(
    const Eigen::MatrixBase<Derived>& u,
    const GlWeightTable<typename Derived::Scalar>& weights) {
  using Scalar = typename Derived::Scalar;
  detail::require_grid_vector(u, "apply_gl_unshifted_operator");
  const long n = static_cast<long>(u.size()) - 1;
  if (weights.max_index() < n) {
    throw DomainError("apply_gl_unshifted_operator: weight table shorter than grid");
  }
  PlainVector<Derived> out(n - 1);
  for (long j = 1; j < n; ++j) {
    Scalar acc(0);
    for (long k = j; k >= 0; --k) acc += weights(k) * u(j - k);
    out(j - 1) = acc;
  }
  return out;
}

}  // namespace fracdiff
