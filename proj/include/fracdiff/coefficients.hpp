#pragma once

// Coefficients of the linear-spline discretization of the Riemann-Liouville
// derivative of order 1 < alpha <= 2, and the Grunwald-Letnikov weights used
// by the first-order baseline.
//
// The spline coefficients depend only on the offset m = j - k between the
// row and the column of the operator, so they are stored once per offset:
//
//   a_0 = 1,  a_m = (m+1)^e - 2 m^e + (m-1)^e             (m >= 1)
//   q_{-1} = 1, q_0 = 2^e - 4, q_1 = 3^e - 4 2^e + 6,
//   q_m = (m+2)^e - 4(m+1)^e + 6 m^e - 4(m-1)^e + (m-2)^e  (m >= 2)
//
// with e = 3 - alpha. For m >= 2 the q_m are a centered fourth difference of
// m^e; from m = kSeriesSwitch on they are evaluated from the even-power
// binomial expansion instead, which avoids the cancellation of the direct
// formula (about four digits lost by m = 1000).

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <string>

#include "fracdiff/errors.hpp"
#include "fracdiff/special.hpp"

namespace fracdiff {

inline constexpr int kSeriesSwitch = 8;

template <typename Scalar>
void require_order(Scalar alpha, const char* who) {
  if (!(alpha > Scalar(1) && alpha <= Scalar(2))) {
    throw DomainError(std::string(who) + ": alpha must lie in (1,2], got " +
                      std::to_string(static_cast<double>(alpha)));
  }
}

template <typename Scalar = double>
Scalar spline_a_coeff(long m, Scalar alpha) {
  if (m < 0) throw DomainError("spline_a_coeff: offset must be >= 0");
  if (m == 0) return Scalar(1);
  using std::pow;
  const Scalar e = Scalar(3) - alpha;
  const Scalar mm = Scalar(m);
  return pow(mm + Scalar(1), e) - Scalar(2) * pow(mm, e) +
         pow(mm - Scalar(1), e);
}

namespace detail {

// m^e * sum_{k >= k0} C(e,k) w_k m^-k, with the weights w_k supplied by the
// caller. Stops when a term no longer changes the sum.
template <typename Scalar, typename Weight>
Scalar binomial_tail(Scalar e, Scalar m, int k0, Weight weight) {
  using std::abs;
  using std::pow;
  Scalar binom(1);
  Scalar inv_pow(1);
  const Scalar inv_m = Scalar(1) / m;
  for (int k = 1; k < k0; ++k) {
    binom *= (e - Scalar(k - 1)) / Scalar(k);
    inv_pow *= inv_m;
  }
  Scalar sum(0);
  for (int k = k0; k < 400; ++k) {
    binom *= (e - Scalar(k - 1)) / Scalar(k);
    inv_pow *= inv_m;
    const Scalar term = binom * weight(k) * inv_pow;
    sum += term;
    if (binom == Scalar(0)) break;
    if (term != Scalar(0) && abs(term) <= Scalar(1e-18) * abs(sum)) break;
  }
  return pow(m, e) * sum;
}

}  // namespace detail

// q_m for a single offset m >= -1.
template <typename Scalar = double>
Scalar spline_q_coeff(long m, Scalar alpha) {
  if (m < -1) throw DomainError("spline_q_coeff: offset must be >= -1");
  using std::ldexp;
  using std::pow;
  const Scalar e = Scalar(3) - alpha;
  switch (m) {
    case -1:
      return Scalar(1);
    case 0:
      return pow(Scalar(2), e) - Scalar(4);
    case 1:
      return pow(Scalar(3), e) - Scalar(4) * pow(Scalar(2), e) + Scalar(6);
    default:
      break;
  }
  const Scalar mm = Scalar(m);
  if (m < kSeriesSwitch) {
    return pow(mm + Scalar(2), e) - Scalar(4) * pow(mm + Scalar(1), e) +
           Scalar(6) * pow(mm, e) - Scalar(4) * pow(mm - Scalar(1), e) +
           pow(mm - Scalar(2), e);
  }
  // Odd powers cancel; even k contribute C(e,k) (2^(k+1) - 8) m^(e-k).
  return detail::binomial_tail(e, mm, 4, [](int k) {
    return (k % 2 == 0) ? Scalar(ldexp(1.0, k + 1) - 8.0) : Scalar(0);
  });
}

// Sum_{m>=2} q_m in closed form: -3 + 3 2^e - 3^e.
template <typename Scalar = double>
Scalar q_tail_closed_form(Scalar alpha) {
  using std::pow;
  const Scalar e = Scalar(3) - alpha;
  return Scalar(-3) + Scalar(3) * pow(Scalar(2), e) - pow(Scalar(3), e);
}

// s_M = -(M-1)^e + 3 M^e - 3(M+1)^e + (M+2)^e, the gap between the partial
// sum sum_{m=2}^{M} q_m and its limit. Also equals minus the neglected tail
// sum_{m>M} q_m.
template <typename Scalar = double>
Scalar partial_sum_residual(Scalar alpha, long M) {
  if (M < 2) throw DomainError("partial_sum_residual: M must be >= 2");
  using std::ldexp;
  using std::pow;
  const Scalar e = Scalar(3) - alpha;
  const Scalar mm = Scalar(M);
  if (M < kSeriesSwitch) {
    return -pow(mm - Scalar(1), e) + Scalar(3) * pow(mm, e) -
           Scalar(3) * pow(mm + Scalar(1), e) + pow(mm + Scalar(2), e);
  }
  return detail::binomial_tail(e, mm, 3, [](int k) {
    return Scalar(ldexp(1.0, k) - 3.0 - ((k % 2 == 0) ? 1.0 : -1.0));
  });
}

// Offset-indexed table q_{-1..M} for one order alpha.
template <typename Scalar = double>
class FracCoeffTable {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  FracCoeffTable(Scalar alpha, long max_offset)
      : alpha_(alpha), max_offset_(max_offset) {
    require_order(alpha, "build_coeff_table");
    if (max_offset < 2) {
      throw DomainError("build_coeff_table: max offset M must be >= 2");
    }
    gamma4a_ = gamma(Scalar(4) - alpha);
    q_.resize(max_offset + 2);
    for (long m = -1; m <= max_offset; ++m) q_[m + 1] = spline_q_coeff(m, alpha);
  }

  Scalar alpha() const noexcept { return alpha_; }
  long max_offset() const noexcept { return max_offset_; }
  // Gamma(4 - alpha), the normalization of the operator.
  Scalar gamma4a() const noexcept { return gamma4a_; }

  // q_m for -1 <= m <= M.
  Scalar operator()(long m) const { return q_[m + 1]; }
  Scalar at(long m) const {
    if (m < -1 || m > max_offset_) {
      throw DomainError("FracCoeffTable: offset out of range");
    }
    return q_[m + 1];
  }

  // Entries in offset order starting at m = -1.
  const Vector& values() const noexcept { return q_; }

 private:
  Scalar alpha_;
  long max_offset_;
  Scalar gamma4a_;
  Vector q_;
};

template <typename Scalar = double>
FracCoeffTable<Scalar> build_coeff_table(Scalar alpha, long max_offset) {
  return FracCoeffTable<Scalar>(alpha, max_offset);
}

// g_k = (-1)^k C(alpha, k), k = 0..K.
template <typename Scalar = double>
class GlWeightTable {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  GlWeightTable(Scalar alpha, long max_index) : alpha_(alpha) {
    if (max_index < 1) {
      throw DomainError("build_gl_shifted_weights: K must be >= 1");
    }
    g_.resize(max_index + 1);
    g_[0] = Scalar(1);
    for (long k = 1; k <= max_index; ++k) {
      g_[k] = g_[k - 1] * (Scalar(k - 1) - alpha) / Scalar(k);
    }
  }

  Scalar alpha() const noexcept { return alpha_; }
  long max_index() const noexcept { return static_cast<long>(g_.size()) - 1; }
  Scalar operator()(long k) const { return g_[k]; }
  const Vector& values() const noexcept { return g_; }

 private:
  Scalar alpha_;
  Vector g_;
};

template <typename Scalar = double>
GlWeightTable<Scalar> build_gl_shifted_weights(Scalar alpha, long max_index) {
  return GlWeightTable<Scalar>(alpha, max_index);
}

}  // namespace fracdiff
