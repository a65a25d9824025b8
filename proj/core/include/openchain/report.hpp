#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "openchain/params.hpp"

namespace openchain {

using json = nlohmann::json;

enum class CheckKind {
  normative,      // must pass
  control,        // negative control: must fail
  informational,  // never gates
};

/// Machine-readable outcome of one verification. passed <=> max_residual <= tolerance.
struct CheckReport {
  std::string check_name;
  json parameters = json::object();
  std::uint64_t seed = 0;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  CheckKind kind = CheckKind::normative;
  std::vector<std::string> notes;

  /// Folds one residual into max_residual (NaN poisons the report).
  void record(double residual);
  /// Sets passed from max_residual and tolerance.
  void finalize();
  /// Whether the report meets its kind's expectation.
  bool acceptable() const;

  json to_json() const;
};

std::string to_string(CheckKind kind);

json complex_to_json(cx z);
/// Accepts [re, im] or a plain number.
cx complex_from_json(const json& j);

json to_json(const GeneralBoundary& b);
json to_json(const TriangularBoundary& b);
json to_json(const Boundary& b);
json to_json(const ModelParams& p);

/// {"checks": [...], "summary": {...}} with reports ordered by name.
json suite_to_json(std::vector<CheckReport> reports);

/// True iff every report is acceptable.
bool suite_ok(const std::vector<CheckReport>& reports);

}  // namespace openchain
