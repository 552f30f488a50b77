#include <doctest.h>

#include <cmath>

#include "fracdiff/errors.hpp"
#include "fracdiff/scheme.hpp"
#include "oracles.hpp"

using namespace fracdiff;

namespace {

SchemeConfig config(double tau, double dt, double t_end) {
  SchemeConfig c;
  c.tau = tau;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

// Homogeneous problem: zero source and boundary data.
Problem homogeneous(double alpha, std::function<double(double)> f) {
  Problem p = example3(alpha, 0.1);
  p.initial = std::move(f);
  return p;
}

}  // namespace

TEST_CASE("operator matrix structure") {
  const Problem p = example2(1.6);
  const Grid1D grid(0.0, 1.0, 10);
  const auto sys = assemble(p, grid, config(0.5, 0.1, 1.0));
  const Matrix& q = sys.q();
  REQUIRE(q.rows() == 9);
  const auto table = build_coeff_table(1.6, 10);
  for (long i = 0; i < 9; ++i) {
    for (long k = 0; k < 9; ++k) {
      const double want = k > i + 1 ? 0.0 : table(i - k);
      CHECK(q(i, k) == doctest::Approx(want).epsilon(1e-15));
    }
  }
  CHECK(sys.normalization() == doctest::Approx(table.gamma4a()));
  CHECK(sys.boundary_coefficient() == 1.0);
  // Interior rows: sum of the row equals the partial sum over the offsets it
  // covers.
  for (long i = 1; i < 8; ++i) {
    double s = 0.0;
    for (long m = -1; m <= i; ++m) s += table(m);
    CHECK(q.row(i).sum() == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("implicit matrix tends to the identity as dt -> 0") {
  const Problem p = example2(1.4);
  const Grid1D grid(0.0, 1.0, 8);
  double prev = 1e300;
  for (double dt : {1e-2, 1e-4, 1e-6}) {
    const auto sys = assemble(p, grid, config(0.5, dt, 1.0));
    const double d = (sys.implicit_matrix() - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff();
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("zero data stays zero") {
  const Problem p = homogeneous(1.5, [](double) { return 0.0; });
  const auto snaps = run(p, Grid1D(0.0, 4.0, 20), config(0.5, 0.05, 1.0));
  CHECK(snaps.back().values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("alpha = 2 reproduces the classical theta-scheme") {
  for (double tau : {0.5, 0.75, 1.0}) {
    const Problem p = example1(2.0);
    const long n = 24;
    const double dt = 0.02;
    const auto snap = run(p, Grid1D(p.a, p.b, n), config(tau, dt, 50 * dt)).back();
    const auto ref = oracle::theta_scheme({p.a, p.b, p.diffusion, p.source, p.initial,
                                           p.right_boundary},
                                          n, tau, dt, 50);
    for (long j = 0; j <= n; ++j) CHECK(std::abs(snap.values(j) - ref[j]) < 1e-12);
  }
}

TEST_CASE("reusing an assembled system is bitwise identical") {
  const Problem p = example2(1.7);
  const Grid1D grid(0.0, 1.0, 16);
  const auto cfg = config(0.6, 1.0 / 16, 1.0);
  const auto sys = assemble(p, grid, cfg);
  const auto a = run(p, sys).back().values;
  const auto b = run(p, sys).back().values;
  const auto c = run(p, grid, cfg).back().values;
  CHECK((a.array() == b.array()).all());
  CHECK((a.array() == c.array()).all());
}

TEST_CASE("homogeneous problems are linear in the data") {
  auto f = [](double x) { return x * x * (4.0 - x); };
  auto g = [](double x) { return std::sin(M_PI * x / 4.0); };
  const Grid1D grid(0.0, 4.0, 32);
  const auto cfg = config(0.5, 0.05, 0.5);
  const auto uf = run(homogeneous(1.3, f), grid, cfg).back().values;
  const auto ug = run(homogeneous(1.3, g), grid, cfg).back().values;
  const auto ufg =
      run(homogeneous(1.3, [&](double x) { return 2.0 * f(x) - g(x); }), grid, cfg).back().values;
  CHECK((ufg - (2.0 * uf - ug)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("homogeneous solutions do not grow for tau >= 1/2") {
  auto f = [](double x) { return x * x * (4.0 - x); };
  const Grid1D grid(0.0, 4.0, 40);
  for (double tau : {0.5, 1.0}) {
    const auto snaps = run(homogeneous(1.5, f), grid, config(tau, 0.5, 50.0));
    const double initial = initial_state(homogeneous(1.5, f), grid).nodal().cwiseAbs().maxCoeff();
    CHECK(snaps.back().values.cwiseAbs().maxCoeff() <= initial * (1.0 + 1e-12));
  }
}

TEST_CASE("snapshots snap to the nearest step") {
  const Problem p = example2(1.5);
  auto cfg = config(0.5, 0.1, 1.0);
  cfg.snapshot_times = {0.0, 0.26, 1.0};
  const auto snaps = run(p, Grid1D(0.0, 1.0, 10), cfg);
  REQUIRE(snaps.size() == 3);
  CHECK(snaps[0].step == 0);
  CHECK(snaps[1].step == 3);
  CHECK(snaps[1].time == doctest::Approx(0.3));
  CHECK(snaps[1].requested_time == 0.26);
  CHECK(snaps[2].step == 10);
  CHECK(snaps[0].values(10) == 1.0);
}

TEST_CASE("t_end = 0 returns the initial state") {
  const Problem p = example2(1.5);
  SchemeConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.0;
  const auto snaps = run(p, Grid1D(0.0, 1.0, 10), cfg);
  REQUIRE(snaps.size() == 1);
  CHECK(snaps[0].step == 0);
  CHECK(snaps[0].values(5) == doctest::Approx(0.125));
}

TEST_CASE("validation") {
  CHECK(validate(config(0.5, 0.1, 1.0)).empty());
  CHECK(validate(config(1.0, 0.1, 1.0)).empty());
  CHECK(validate(config(0.3, 0.1, 1.0)).size() == 1);
  CHECK(validate(config(1.2, 0.1, 1.0)).size() == 1);
  CHECK_THROWS_AS(validate(config(-0.1, 0.1, 1.0)), DomainError);
  CHECK_THROWS_AS(validate(config(2.5, 0.1, 1.0)), DomainError);
  CHECK_THROWS_AS(validate(config(0.5, 0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(validate(config(0.5, 2.0, 1.0)), DomainError);
  auto bad = config(0.5, 0.1, 1.0);
  bad.snapshot_times = {1.5};
  CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("the Grunwald-Letnikov baseline assembles with unit normalization") {
  const Problem p = example2(1.8);
  auto cfg = config(0.5, 0.1, 1.0);
  cfg.spatial = SpatialOperator::kGlShifted;
  const auto sys = assemble(p, Grid1D(0.0, 1.0, 10), cfg);
  CHECK(sys.normalization() == 1.0);
  CHECK(sys.q()(0, 0) == doctest::Approx(-1.8));
  CHECK(sys.q()(0, 1) == 1.0);
}

TEST_CASE("an unstable explicit run reports a numerical failure") {
  auto f = [](double x) { return x * x * (4.0 - x); };
  const Problem p = homogeneous(1.5, f);
  CHECK_THROWS_AS(run(p, Grid1D(0.0, 4.0, 40), config(0.0, 1.0, 2000.0)), NumericalFailure);
}
