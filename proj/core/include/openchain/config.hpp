#pragma once

// Run configuration for the command-line front end. JSON layout:
//
//   {
//     "eta": [1, 0],
//     "L": 2,
//     "xi": [[0.1, 0], [-0.2, 0]],
//     "right": {"triangular": {"a": 1.3, "b": 0.4, "c": 0.7}},
//     "left":  {"general": {"alpha": 0.8, "beta": -0.5, "gamma": 0.6, "delta": 0}},
//     "N": 2,                      (or "N_range": [0, 2])
//     "seed": 20121,
//     "tolerances": {"spectrum": 1e-6},
//     "solver": {"starts": 200, "newton_tol": 1e-11, "max_iter": 100},
//     "output": "report.json"
//   }
//
// Every key is optional. Complex scalars are [re, im] or plain numbers.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "openchain/bethe.hpp"
#include "openchain/params.hpp"
#include "openchain/report.hpp"
#include "openchain/verify.hpp"

namespace openchain {

inline constexpr std::uint64_t kDefaultSeed = 20121;

struct RunConfig {
  ModelParams params = ModelParams::homogeneous(1.0, 2);
  Boundary right = TriangularBoundary{1.3, 0.4, 0.7};
  Boundary left = TriangularBoundary{0.8, -0.5, 0.6};
  std::optional<int> n;
  std::optional<std::pair<int, int>> n_range;
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerances;
  SolverConfig solver;
  std::string output;
  /// Test fixture: offset added to K(u)_12 in the reflection check.
  std::optional<cx> right_k_offset;

  /// Inclusive N bounds: N, N_range, or [0, L].
  std::pair<int, int> n_bounds() const;
  SuiteConfig suite(std::uint64_t seed) const;
};

/// Throws InputError on unknown keys, wrong types or inconsistent sizes.
RunConfig parse_run_config(const json& j);
/// Reads and parses a JSON file; an empty path gives the defaults.
RunConfig load_run_config(const std::string& path);

Boundary boundary_from_json(const json& j);

/// --seed, then the environment value, then the config, then the default.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value, const RunConfig& config);

/// "NAME=VAL" with NAME a known tolerance name.
std::pair<std::string, double> parse_tolerance_override(const std::string& text);

}  // namespace openchain
