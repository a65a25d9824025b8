#include "openchain/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include "openchain/errors.hpp"

namespace openchain {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw InputError(where + ": unknown key '" + key + "'");
  }
}

cx complex_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing '" + key + "'");
  try {
    return complex_from_json(j.at(key));
  } catch (const InputError& e) {
    throw InputError(where + "." + key + ": " + e.what());
  }
}

int int_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) throw InputError(what + ": not an unsigned 64-bit integer");
  return v;
}

}  // namespace

Boundary boundary_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw InputError("boundary: expected exactly one of {\"general\": ...} or {\"triangular\": ...}");
  }
  const std::string tag = j.begin().key();
  const json& body = j.begin().value();
  if (tag == "general") {
    if (body.is_array()) {
      if (body.size() != 4) throw InputError("general boundary: expected [alpha, beta, gamma, delta]");
      return GeneralBoundary{complex_from_json(body[0]), complex_from_json(body[1]), complex_from_json(body[2]),
                             complex_from_json(body[3])};
    }
    if (!body.is_object()) throw InputError("general boundary: expected an object or a 4-array");
    reject_unknown(body, {"alpha", "beta", "gamma", "delta"}, "general boundary");
    return GeneralBoundary{complex_field(body, "alpha", "general"), complex_field(body, "beta", "general"),
                           complex_field(body, "gamma", "general"), complex_field(body, "delta", "general")};
  }
  if (tag == "triangular") {
    if (body.is_array()) {
      if (body.size() != 3) throw InputError("triangular boundary: expected [a, b, c]");
      return TriangularBoundary{complex_from_json(body[0]), complex_from_json(body[1]), complex_from_json(body[2])};
    }
    if (!body.is_object()) throw InputError("triangular boundary: expected an object or a 3-array");
    reject_unknown(body, {"a", "b", "c"}, "triangular boundary");
    return TriangularBoundary{complex_field(body, "a", "triangular"), complex_field(body, "b", "triangular"),
                              complex_field(body, "c", "triangular")};
  }
  throw InputError("boundary: unknown tag '" + tag + "'");
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw InputError("config: top level must be an object");
  reject_unknown(j,
                 {"eta", "L", "xi", "right", "left", "N", "N_range", "seed", "tolerances", "solver", "output",
                  "fixture"},
                 "config");
  RunConfig c;
  const cx eta = j.contains("eta") ? complex_field(j, "eta", "config") : cx{1.0};
  if (eta == cx{}) throw InputError("config: eta must be nonzero");
  std::optional<int> length;
  if (j.contains("L")) {
    length = int_field(j, "L");
    if (*length < 1) throw InputError("config: L must be at least 1");
  }
  if (j.contains("xi")) {
    if (!j["xi"].is_array()) throw InputError("config: xi must be an array");
    std::vector<cx> xi;
    for (const json& x : j["xi"]) xi.push_back(complex_from_json(x));
    if (length && static_cast<int>(xi.size()) != *length) {
      throw InputError("config: xi has " + std::to_string(xi.size()) + " entries but L = " + std::to_string(*length));
    }
    if (xi.empty()) throw InputError("config: xi must not be empty");
    c.params = ModelParams(eta, std::move(xi));
  } else {
    c.params = ModelParams::homogeneous(eta, length.value_or(2));
  }
  if (c.params.length() > 10) throw InputError("config: L above 10 is outside the dense range");

  if (j.contains("right")) c.right = boundary_from_json(j["right"]);
  if (j.contains("left")) c.left = boundary_from_json(j["left"]);

  if (j.contains("N") && j.contains("N_range")) throw InputError("config: give N or N_range, not both");
  if (j.contains("N")) {
    c.n = int_field(j, "N");
    if (*c.n < 0) throw InputError("config: N must be non-negative");
  }
  if (j.contains("N_range")) {
    const json& r = j["N_range"];
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
      throw InputError("config: N_range must be [lo, hi]");
    }
    c.n_range = std::pair{r[0].get<int>(), r[1].get<int>()};
    if (c.n_range->first < 0 || c.n_range->first > c.n_range->second) throw InputError("config: bad N_range");
  }

  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0)) {
      c.seed = s.get<std::uint64_t>();
    } else if (s.is_string()) {
      c.seed = parse_u64(s.get<std::string>(), "config seed");
    } else {
      throw InputError("config: seed must be an unsigned integer");
    }
  }

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw InputError("config: tolerances must be an object");
    for (const auto& [name, v] : t.items()) {
      if (!default_tolerances().count(name)) throw InputError("config: unknown tolerance '" + name + "'");
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw InputError("config: tolerance '" + name + "' must be > 0");
      c.tolerances[name] = v.get<double>();
    }
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw InputError("config: solver must be an object");
    reject_unknown(s, {"starts", "newton_tol", "max_iter"}, "solver");
    if (s.contains("starts")) c.solver.starts = int_field(s, "starts");
    if (s.contains("max_iter")) c.solver.max_iter = int_field(s, "max_iter");
    if (s.contains("newton_tol")) {
      if (!s["newton_tol"].is_number()) throw InputError("solver: newton_tol must be a number");
      c.solver.newton_tol = s["newton_tol"].get<double>();
    }
    if (c.solver.starts < 1 || c.solver.max_iter < 1 || !(c.solver.newton_tol > 0.0)) {
      throw InputError("solver: starts, max_iter and newton_tol must be positive");
    }
    c.tolerances.emplace("newton", c.solver.newton_tol);
  }

  if (j.contains("output")) {
    if (!j["output"].is_string()) throw InputError("config: output must be a string");
    c.output = j["output"].get<std::string>();
  }

  if (j.contains("fixture")) {
    const json& f = j["fixture"];
    if (!f.is_object()) throw InputError("config: fixture must be an object");
    reject_unknown(f, {"right_k_offset"}, "fixture");
    if (f.contains("right_k_offset")) c.right_k_offset = complex_from_json(f["right_k_offset"]);
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  if (path.empty()) return RunConfig{};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return parse_run_config(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

std::pair<int, int> RunConfig::n_bounds() const {
  if (n) return {*n, *n};
  if (n_range) return *n_range;
  return {0, params.length()};
}

SuiteConfig RunConfig::suite(std::uint64_t s) const {
  SuiteConfig out;
  out.params = params;
  out.right = right;
  out.left = left;
  out.seed = s;
  out.tolerances = tolerances;
  out.solver = solver;
  out.n_max = n_bounds().second;
  out.right_k_offset = right_k_offset;
  return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value, const RunConfig& config) {
  if (flag) return *flag;
  if (env_value && *env_value) return parse_u64(env_value, "OPENCHAIN_SEED");
  if (config.seed) return *config.seed;
  return kDefaultSeed;
}

std::pair<std::string, double> parse_tolerance_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError("--tol expects NAME=VAL, got '" + text + "'");
  std::string name = text.substr(0, eq);
  if (!default_tolerances().count(name)) throw InputError("--tol: unknown tolerance name '" + name + "'");
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || !(v > 0.0)) {
    throw InputError("--tol: value for '" + name + "' must be a positive number");
  }
  return {std::move(name), v};
}

}  // namespace openchain
