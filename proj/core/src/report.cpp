#include "openchain/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "openchain/errors.hpp"

namespace openchain {

void CheckReport::record(double residual) {
  ++samples;
  if (std::isnan(residual) || std::isnan(max_residual)) {
    max_residual = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  max_residual = std::max(max_residual, residual);
}

void CheckReport::finalize() { passed = !std::isnan(max_residual) && max_residual <= tolerance; }

bool CheckReport::acceptable() const {
  switch (kind) {
    case CheckKind::normative:
      return passed;
    case CheckKind::control:
      return !passed;
    case CheckKind::informational:
      return true;
  }
  return false;
}

namespace {

// JSON has no NaN/Inf; such residuals are written as strings.
json residual_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

json CheckReport::to_json() const {
  return json{{"check_name", check_name},
              {"parameters", parameters},
              {"seed", seed},
              {"samples", samples},
              {"max_residual", residual_json(max_residual)},
              {"tolerance", tolerance},
              {"passed", passed},
              {"kind", openchain::to_string(kind)},
              {"acceptable", acceptable()},
              {"notes", notes}};
}

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::normative:
      return "normative";
    case CheckKind::control:
      return "control";
    case CheckKind::informational:
      return "informational";
  }
  return "unknown";
}

json complex_to_json(cx z) { return json::array({z.real(), z.imag()}); }

cx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("expected a number or [re, im], got " + j.dump());
}

json to_json(const GeneralBoundary& b) {
  return json{{"type", "general"},
              {"alpha", complex_to_json(b.alpha)},
              {"beta", complex_to_json(b.beta)},
              {"gamma", complex_to_json(b.gamma)},
              {"delta", complex_to_json(b.delta)}};
}

json to_json(const TriangularBoundary& b) {
  return json{{"type", "triangular"},
              {"a", complex_to_json(b.a)},
              {"b", complex_to_json(b.b)},
              {"c", complex_to_json(b.c)}};
}

json to_json(const Boundary& b) {
  return std::visit([](const auto& x) { return to_json(x); }, b);
}

json to_json(const ModelParams& p) {
  json xi = json::array();
  for (cx x : p.xi()) xi.push_back(complex_to_json(x));
  return json{{"eta", complex_to_json(p.eta())}, {"L", p.length()}, {"xi", xi}};
}

json suite_to_json(std::vector<CheckReport> reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
  json checks = json::array();
  int ok = 0, normative = 0, normative_passed = 0, controls = 0, controls_failed = 0;
  for (const auto& r : reports) {
    checks.push_back(r.to_json());
    if (r.acceptable()) ++ok;
    if (r.kind == CheckKind::normative) {
      ++normative;
      if (r.passed) ++normative_passed;
    } else if (r.kind == CheckKind::control) {
      ++controls;
      if (!r.passed) ++controls_failed;
    }
  }
  json summary{{"total", reports.size()},
               {"acceptable", ok},
               {"normative", normative},
               {"normative_passed", normative_passed},
               {"controls", controls},
               {"controls_failed_as_expected", controls_failed},
               {"ok", ok == static_cast<int>(reports.size())}};
  return json{{"checks", checks}, {"summary", summary}};
}

bool suite_ok(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.acceptable(); });
}

}  // namespace openchain
