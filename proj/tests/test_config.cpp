#include <doctest.h>

#include <string>

#include "fracdiff/config.hpp"
#include "fracdiff/errors.hpp"

using namespace fracdiff;

namespace {

std::string error_of(const std::string& text, const ConfigOverrides& o = {}) {
  try {
    parse_config(text, o);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal solve config gets defaults") {
  const auto c = parse_config(
      R"({"subcommand": "solve", "problem": "example1", "alpha": 1.8, "N": 30, "dt": "1/30"})");
  CHECK(c.subcommand == Subcommand::kSolve);
  CHECK(c.problem == "example1");
  CHECK(c.alpha == 1.8);
  CHECK(c.intervals == 30);
  CHECK(c.dt == doctest::Approx(1.0 / 30));
  CHECK(c.tau == 0.5);
  CHECK(c.t_end == 1.0);
  REQUIRE(c.snapshot_times.size() == 1);
  CHECK(c.snapshot_times[0] == 1.0);
  CHECK(c.warnings.empty());
}

TEST_CASE("tau outside [1/2,1] is accepted with a warning") {
  const auto c = parse_config(
      R"({"subcommand": "solve", "N": 10, "dt": 0.1, "tau": 1.2})");
  CHECK(c.tau == 1.2);
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("tau") != std::string::npos);
  CHECK(resolved_json(c).find("1.2") != std::string::npos);
}

TEST_CASE("invalid values name the field") {
  const std::string text = "{\n  \"subcommand\": \"solve\",\n  \"N\": 10,\n  \"dt\": 0.1,\n"
                           "  \"alpha\": 2.5\n}";
  try {
    parse_config(text);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "alpha");
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("alpha must lie in (1,2]") != std::string::npos);
  }
  CHECK(error_of(R"({"subcommand": "solve", "N": 10, "dt": 0.1, "tau": 3})")
            .find("tau must lie in [0,2]") != std::string::npos);
  CHECK(error_of(R"({"subcommand": "solve", "N": 1, "dt": 0.1})").find("N must") !=
        std::string::npos);
  CHECK(error_of(R"({"subcommand": "solve", "N": 10})").find("dt must") != std::string::npos);
  CHECK(error_of(R"({"subcommand": "converge", "problem": "example3", "resolutions": [0.1]})")
            .find("example3") != std::string::npos);
}

TEST_CASE("unknown keys and subcommands are rejected") {
  CHECK(error_of(R"({"subcommand": "solve", "N": 10, "dt": 0.1, "colour": 1})")
            .find("unknown key 'colour'") != std::string::npos);
  CHECK(error_of(R"({"subcommand": "plot"})").find("unknown subcommand") != std::string::npos);
  CHECK(error_of(R"({"N": 10})").find("subcommand") != std::string::npos);
}

TEST_CASE("parse errors report the line") {
  try {
    parse_config("{\n  \"subcommand\": \"solve\",\n  \"N\": 10,,\n}");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("overrides take precedence") {
  ConfigOverrides o;
  o.alpha = "1.5";
  o.tau = "1";
  o.dt = "1/20";
  o.intervals = "20";
  o.output = "run1";
  const auto c = parse_config(R"({"subcommand": "solve", "alpha": 1.9, "N": 10, "dt": 0.1})", o);
  CHECK(c.alpha == 1.5);
  CHECK(c.tau == 1.0);
  CHECK(c.dt == doctest::Approx(0.05));
  CHECK(c.intervals == 20);
  CHECK(c.output == "run1");
  ConfigOverrides sub;
  sub.subcommand = "coeffs";
  const auto k = parse_config(R"({"alpha": 1.5, "M": 8})", sub);
  CHECK(k.subcommand == Subcommand::kCoeffs);
}

TEST_CASE("sweep settings") {
  const auto c = parse_config(
      R"({"subcommand": "converge", "alphas": [1.2, 1.8], "resolutions": ["1/5", "1/10"],
          "coupling": "dt=dx^2", "dt_factor": 0.5})");
  CHECK(c.alphas.size() == 2);
  CHECK(c.resolutions[1] == doctest::Approx(0.1));
  CHECK(c.coupling_power == 2);
  CHECK(c.dt_factor == 0.5);
  const auto s = parse_config(
      R"({"subcommand": "stability", "alphas": [1.5], "taus": [0.5], "mus": [1, 10]})");
  CHECK(s.theta_count == 4096);
  CHECK(error_of(R"({"subcommand": "stability", "alphas": [1.5], "taus": [0.5]})")
            .find("mus") != std::string::npos);
}

TEST_CASE("compare-gl defaults to example 2") {
  const auto c = parse_config(R"({"subcommand": "compare-gl", "resolutions": [0.1]})");
  CHECK(c.problem == "example2");
}

TEST_CASE("resolved config is deterministic") {
  const std::string text = R"({"subcommand": "coeffs", "alpha": 1.5, "M": 8})";
  CHECK(resolved_json(parse_config(text)) == resolved_json(parse_config(text)));
}
