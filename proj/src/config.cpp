#include "fracdiff/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fracdiff/errors.hpp"
#include "fracdiff/scheme.hpp"

namespace fracdiff {

namespace {

using json = nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "subcommand", "problem",     "alpha", "lambda",    "sigma",          "a",
    "b",          "N",           "tau",   "dt",        "t_end",          "snapshot_times",
    "alphas",     "taus",        "mus",   "resolutions", "coupling",     "dt_factor",
    "theta_count", "M",          "output"};

const std::map<std::string, Subcommand> kSubcommands = {
    {"solve", Subcommand::kSolve},
    {"converge", Subcommand::kConverge},
    {"stability", Subcommand::kStability},
    {"coeffs", Subcommand::kCoeffs},
    {"compare-gl", Subcommand::kCompareGl}};

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" in the document, 0 if absent.
int line_of_key(std::string_view text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(std::string_view text, json doc) : text_(text), doc_(std::move(doc)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const int line = line_of_key(text_, field);
    std::ostringstream msg;
    msg << message;
    if (line > 0) msg << " (line " << line << ")";
    throw ConfigError(msg.str(), field, line);
  }

  bool has(const std::string& key) const { return doc_.contains(key); }

  double number(const std::string& key, const json& value) const {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
      const auto parsed = parse_number(value.get<std::string>());
      if (parsed) return *parsed;
    }
    fail(key, "field '" + key + "' must be a number or a fraction like \"1/30\"");
  }

  double number(const std::string& key) const { return number(key, doc_.at(key)); }

  long integer(const std::string& key) const {
    const double v = number(key);
    if (!std::isfinite(v) || v != std::floor(v)) {
      fail(key, "field '" + key + "' must be an integer");
    }
    return static_cast<long>(v);
  }

  std::string string(const std::string& key) const {
    const auto& v = doc_.at(key);
    if (!v.is_string()) fail(key, "field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const auto& v = doc_.at(key);
    if (!v.is_array()) fail(key, "field '" + key + "' must be a list");
    std::vector<double> out;
    for (const auto& item : v) out.push_back(number(key, item));
    return out;
  }

  static std::optional<double> parse_number(const std::string& s) {
    const auto slash = s.find('/');
    auto parse = [](std::string_view part) -> std::optional<double> {
      while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
      while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
      if (part.empty()) return std::nullopt;
      double v = 0.0;
      const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
      if (res.ec != std::errc() || res.ptr != part.data() + part.size()) return std::nullopt;
      return v;
    };
    if (slash == std::string::npos) return parse(s);
    const auto num = parse(std::string_view(s).substr(0, slash));
    const auto den = parse(std::string_view(s).substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }

 private:
  std::string_view text_;
  json doc_;
};

// Overrides are stored as strings; numeric fields accept them through
// Reader::parse_number, so "--dt 1/30" works like the document form.
void apply_override(json& doc, const char* key, const std::optional<std::string>& value) {
  if (value) doc[key] = *value;
}

}  // namespace

std::string to_string(Subcommand sub) {
  for (const auto& [name, value] : kSubcommands) {
    if (value == sub) return name;
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  json doc;
  try {
    doc = json::parse(text.empty() ? std::string_view("{}") : text);
  } catch (const json::parse_error& e) {
    const int line = line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    std::ostringstream msg;
    msg << "config parse error at line " << line << ": " << e.what();
    throw ConfigError(msg.str(), "", line);
  }
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object", "", 1);

  apply_override(doc, "subcommand", overrides.subcommand);
  apply_override(doc, "alpha", overrides.alpha);
  apply_override(doc, "tau", overrides.tau);
  apply_override(doc, "dt", overrides.dt);
  apply_override(doc, "N", overrides.intervals);
  apply_override(doc, "output", overrides.output);

  const Reader in(text, doc);
  for (const auto& item : doc.items()) {
    if (!kKnownKeys.count(item.key())) in.fail(item.key(), "unknown key '" + item.key() + "'");
  }

  RunConfig cfg;
  if (!in.has("subcommand")) in.fail("subcommand", "missing field 'subcommand'");
  {
    const auto name = in.string("subcommand");
    const auto it = kSubcommands.find(name);
    if (it == kSubcommands.end()) in.fail("subcommand", "unknown subcommand '" + name + "'");
    cfg.subcommand = it->second;
  }
  if (cfg.subcommand == Subcommand::kCompareGl) cfg.problem = "example2";
  if (in.has("problem")) cfg.problem = in.string("problem");
  if (cfg.problem != "example1" && cfg.problem != "example2" && cfg.problem != "example3") {
    in.fail("problem", "unknown problem '" + cfg.problem + "'");
  }
  if (in.has("alpha")) cfg.alpha = in.number("alpha");
  if (in.has("lambda")) cfg.lambda = in.number("lambda");
  if (in.has("sigma")) cfg.sigma = in.number("sigma");
  if (in.has("a")) cfg.a = in.number("a");
  if (in.has("b")) cfg.b = in.number("b");
  if (in.has("N")) cfg.intervals = in.integer("N");
  if (in.has("tau")) cfg.tau = in.number("tau");
  if (in.has("dt")) cfg.dt = in.number("dt");
  if (in.has("t_end")) cfg.t_end = in.number("t_end");
  if (in.has("snapshot_times")) cfg.snapshot_times = in.numbers("snapshot_times");
  if (in.has("alphas")) cfg.alphas = in.numbers("alphas");
  if (in.has("taus")) cfg.taus = in.numbers("taus");
  if (in.has("mus")) cfg.mus = in.numbers("mus");
  if (in.has("resolutions")) cfg.resolutions = in.numbers("resolutions");
  if (in.has("coupling")) {
    const auto c = in.string("coupling");
    if (c == "dt=dx") {
      cfg.coupling_power = 1;
    } else if (c == "dt=dx^2") {
      cfg.coupling_power = 2;
    } else {
      in.fail("coupling", "coupling must be \"dt=dx\" or \"dt=dx^2\"");
    }
  }
  if (in.has("dt_factor")) cfg.dt_factor = in.number("dt_factor");
  if (in.has("theta_count")) cfg.theta_count = in.integer("theta_count");
  if (in.has("M")) cfg.max_offset = in.integer("M");
  if (in.has("output")) cfg.output = in.string("output");

  // Validation, before any computation starts.
  auto check_alpha = [&](double a, const char* field) {
    if (!(a > 1.0 && a <= 2.0)) in.fail(field, "alpha must lie in (1,2]");
  };
  auto check_tau = [&](double t, const char* field) {
    if (!(t >= kMinTau && t <= kMaxTau)) in.fail(field, "tau must lie in [0,2]");
    if (t < 0.5 || t > 1.0) {
      std::ostringstream msg;
      msg << "tau = " << t << " is outside [1/2,1], where unconditional stability is proven";
      cfg.warnings.push_back(msg.str());
    }
  };
  check_alpha(cfg.alpha, "alpha");
  if (cfg.alphas.empty()) cfg.alphas.push_back(cfg.alpha);
  for (double a : cfg.alphas) check_alpha(a, "alphas");
  if (cfg.problem == "example2" && !(cfg.lambda + 1.0 - cfg.alpha > 0.0)) {
    in.fail("lambda", "lambda must satisfy lambda + 1 - alpha > 0");
  }
  if (!(cfg.sigma > 0.0)) in.fail("sigma", "sigma must be positive");
  if (!(cfg.dt_factor > 0.0)) in.fail("dt_factor", "dt_factor must be positive");
  if (!(cfg.t_end >= 0.0)) in.fail("t_end", "t_end must be non-negative");

  switch (cfg.subcommand) {
    case Subcommand::kSolve: {
      check_tau(cfg.tau, "tau");
      if (cfg.intervals < 2) in.fail("N", "N must be an integer >= 2");
      if (!(cfg.dt > 0.0)) in.fail("dt", "dt must be positive");
      if (cfg.t_end > 0.0 && cfg.dt > cfg.t_end * (1.0 + 1e-9)) {
        in.fail("dt", "dt must not exceed t_end");
      }
      if (cfg.snapshot_times.empty()) cfg.snapshot_times.push_back(cfg.t_end);
      std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
      for (double t : cfg.snapshot_times) {
        if (!(t >= 0.0 && t <= cfg.t_end * (1.0 + 1e-9))) {
          in.fail("snapshot_times", "snapshot times must lie in [0, t_end]");
        }
      }
      break;
    }
    case Subcommand::kConverge:
    case Subcommand::kCompareGl: {
      check_tau(cfg.tau, "tau");
      if (cfg.resolutions.empty()) in.fail("resolutions", "resolutions must list dx values");
      for (double dx : cfg.resolutions) {
        if (!(dx > 0.0)) in.fail("resolutions", "resolutions must be positive");
      }
      if (cfg.problem == "example3") {
        in.fail("problem", "example3 has no exact solution; errors cannot be measured");
      }
      if (cfg.subcommand == Subcommand::kCompareGl) cfg.alphas = {cfg.alpha};
      break;
    }
    case Subcommand::kStability: {
      if (cfg.taus.empty()) cfg.taus.push_back(cfg.tau);
      for (double t : cfg.taus) check_tau(t, "taus");
      if (cfg.mus.empty()) in.fail("mus", "mus must list at least one value");
      for (double mu : cfg.mus) {
        if (!(mu > 0.0)) in.fail("mus", "mus must be positive");
      }
      if (cfg.theta_count < 1) in.fail("theta_count", "theta_count must be >= 1");
      break;
    }
    case Subcommand::kCoeffs: {
      // A grid of N intervals needs offsets up to N.
      if (cfg.max_offset == 0 && cfg.intervals > 0) cfg.max_offset = cfg.intervals;
      if (cfg.max_offset < 2) in.fail("M", "M must be an integer >= 2 (or give N)");
      break;
    }
  }
  if (cfg.a || cfg.b) {
    if (cfg.subcommand != Subcommand::kSolve) {
      in.fail(cfg.a ? "a" : "b", "a and b apply to the solve subcommand only");
    }
  }
  if (cfg.output.empty()) in.fail("output", "output prefix must not be empty");
  return cfg;
}

std::string resolved_json(const RunConfig& c) {
  json j;
  j["subcommand"] = to_string(c.subcommand);
  j["problem"] = c.problem;
  j["alpha"] = c.alpha;
  j["lambda"] = c.lambda;
  j["sigma"] = c.sigma;
  if (c.a) j["a"] = *c.a;
  if (c.b) j["b"] = *c.b;
  j["N"] = c.intervals;
  j["tau"] = c.tau;
  j["dt"] = c.dt;
  j["t_end"] = c.t_end;
  j["snapshot_times"] = c.snapshot_times;
  j["alphas"] = c.alphas;
  j["taus"] = c.taus;
  j["mus"] = c.mus;
  j["resolutions"] = c.resolutions;
  j["coupling"] = c.coupling_power == 1 ? "dt=dx" : "dt=dx^2";
  j["dt_factor"] = c.dt_factor;
  j["theta_count"] = c.theta_count;
  j["M"] = c.max_offset;
  j["output"] = c.output;
  return j.dump();
}

}  // namespace fracdiff
