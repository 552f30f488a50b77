#include <doctest.h>

#include <cmath>

#include "fracdiff/coefficients.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/special.hpp"
#include "oracles.hpp"

using namespace fracdiff;

TEST_CASE("a coefficients") {
  CHECK(spline_a_coeff(0, 1.5) == 1.0);
  CHECK(spline_a_coeff(2, 1.5) == doctest::Approx(0.53929817321425168538).epsilon(1e-14));
  // alpha = 2: a_m = (m+1) - 2m + (m-1) = 0 for m >= 1.
  CHECK(std::abs(spline_a_coeff(5, 2.0)) < 1e-14);
}

TEST_CASE("low-order q coefficients") {
  CHECK(spline_q_coeff(-1, 1.5) == 1.0);
  CHECK(spline_q_coeff(0, 1.5) == doctest::Approx(-1.1715728752538099024).epsilon(1e-14));
  CHECK(spline_q_coeff(1, 1.2) == doctest::Approx(-0.7041349568959101636).epsilon(1e-14));
  // alpha = 2 reduces to the three-point Laplacian.
  CHECK(spline_q_coeff(-1, 2.0) == 1.0);
  CHECK(spline_q_coeff(0, 2.0) == doctest::Approx(-2.0));
  CHECK(spline_q_coeff(1, 2.0) == doctest::Approx(1.0));
  for (long m = 2; m < 20; ++m) CHECK(std::abs(spline_q_coeff(m, 2.0)) < 1e-13);
}

TEST_CASE("large-offset q coefficients") {
  CHECK(spline_q_coeff(10, 1.5) == doctest::Approx(0.0018052140877423843623).epsilon(1e-12));
  CHECK(spline_q_coeff(1000, 1.5) == doctest::Approx(1.7787837779054217079e-8).epsilon(1e-12));
  CHECK(spline_q_coeff(10000, 1.1) == doctest::Approx(7.4883959593603798387e-10).epsilon(1e-12));
  CHECK(spline_q_coeff(50, 1.8) == doctest::Approx(6.0501470357013376617e-6).epsilon(1e-12));
  CHECK(spline_q_coeff(3, 1.999) == doctest::Approx(9.6365397322133927506e-5).epsilon(1e-10));
}

TEST_CASE("series and direct fourth difference agree where both are accurate") {
  for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
    for (long m = -1; m <= 20; ++m) {
      CAPTURE(alpha);
      CAPTURE(m);
      const double direct = static_cast<double>(oracle::direct_q(m, alpha));
      CHECK(std::abs(spline_q_coeff(m, alpha) - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("tail closed form and residual") {
  CHECK(q_tail_closed_form(1.5) == doctest::Approx(0.28912895153193841223).epsilon(1e-14));
  CHECK(q_tail_closed_form(1.2) == doctest::Approx(0.22193270371141353078).epsilon(1e-14));
  CHECK(partial_sum_residual(1.5, 100) ==
        doctest::Approx(-0.00037222225155582050693).epsilon(1e-12));
  CHECK_THROWS_AS(partial_sum_residual(1.5, 1), DomainError);
}

TEST_CASE("sum identities") {
  for (double alpha : {1.05, 1.3, 1.55, 1.8, 2.0}) {
    for (long M : {2L, 7L, 8L, 50L, 1000L}) {
      CAPTURE(alpha);
      CAPTURE(M);
      const auto q = build_coeff_table(alpha, M);
      double tail = 0.0;
      for (long m = 2; m <= M; ++m) tail += q(m);
      const double s = partial_sum_residual(alpha, M);
      CHECK(std::abs(tail - (q_tail_closed_form(alpha) + s)) <= 1e-12);
      // Partial sum through M is s_M, so the neglected tail is -s_M.
      CHECK(std::abs(q.values().sum() - s) <= 1e-12);
    }
  }
}

TEST_CASE("sign and monotonicity") {
  for (int i = 1; i <= 19; ++i) {
    const double alpha = i == 19 ? 2.0 : 1.0 + 0.05 * i;
    const auto q = build_coeff_table(alpha, 2000);
    CHECK(q(0) <= 0.0);
    for (long m = 2; m <= 2000; ++m) {
      REQUIRE(q(m) >= 0.0);
      if (m > 2) REQUIRE(q(m) <= q(m - 1));
    }
  }
}

TEST_CASE("coefficient table") {
  const auto q = build_coeff_table(1.5, 10);
  CHECK(q.max_offset() == 10);
  CHECK(q.values().size() == 12);
  CHECK(q.gamma4a() == doctest::Approx(fracdiff::gamma(2.5)));
  CHECK(q(-1) == 1.0);
  CHECK_THROWS_AS(q.at(11), DomainError);
  CHECK_THROWS_AS(build_coeff_table(1.5, 1), DomainError);
  CHECK_THROWS_AS(build_coeff_table(1.0, 10), DomainError);
  CHECK_THROWS_AS(build_coeff_table(2.5, 10), DomainError);
}

TEST_CASE("Grunwald-Letnikov weights") {
  const auto g = build_gl_shifted_weights(1.5, 6);
  CHECK(g(0) == 1.0);
  CHECK(g(1) == doctest::Approx(-1.5));
  CHECK(g(2) == doctest::Approx(1.5 * 0.5 / 2.0));
  // Binomial series of (1 - 1)^alpha sums to zero.
  const auto big = build_gl_shifted_weights(1.5, 200000);
  CHECK(std::abs(big.values().sum()) < 1e-6);
  // alpha = 2: 1, -2, 1, 0, ...
  const auto two = build_gl_shifted_weights(2.0, 5);
  CHECK(two(1) == -2.0);
  CHECK(two(2) == 1.0);
  CHECK(two(3) == 0.0);
}
