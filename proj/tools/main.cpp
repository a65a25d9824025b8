// openchain: command-line front end for the open XXX chain toolkit.
//
//   openchain check [--suite ybe,reflection] [--config cfg.json] [--out report.json]
//   openchain solve --config cfg.json [--csv rows.csv]
//   openchain triangularize --config cfg.json
//   openchain spectrum [--point 0.3,0.1 ...]
//   openchain hamiltonian --config cfg.json
//
// Exit codes: 0 success, 1 verification or solve failure, 2 input error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "openchain/bethe.hpp"
#include "openchain/config.hpp"
#include "openchain/errors.hpp"
#include "openchain/lattice.hpp"
#include "openchain/report.hpp"
#include "openchain/triangular.hpp"
#include "openchain/verify.hpp"

using namespace openchain;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> tols;
};

struct Context {
  RunConfig config;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

Context load(const Common& c) {
  Context ctx;
  ctx.config = load_run_config(c.config_path);
  for (const std::string& t : c.tols) {
    auto [name, value] = parse_tolerance_override(t);
    ctx.config.tolerances[name] = value;
  }
  ctx.seed = resolve_seed(c.seed, std::getenv("OPENCHAIN_SEED"), ctx.config);
  ctx.out = c.out.empty() ? ctx.config.output : c.out;
  return ctx;
}

json metadata() { return json{{"tool", "openchain"}, {"version", "0.1.0"}}; }

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<cx> sorted(std::vector<cx> v) {
  std::sort(v.begin(), v.end(), [](cx a, cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

json complex_list(const std::vector<cx>& v) {
  json out = json::array();
  for (cx z : v) out.push_back(complex_to_json(z));
  return out;
}

std::string csv_path_for(const std::string& json_path) {
  const auto dot = json_path.rfind('.');
  const auto slash = json_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return json_path + ".csv";
  return json_path.substr(0, dot) + ".csv";
}

// Triangular boundaries in the config's gauge, or those of M^-1 K M.
std::pair<TriangularBoundary, TriangularBoundary> gauge_of(const RunConfig& c) {
  const auto* rt = std::get_if<TriangularBoundary>(&c.right);
  const auto* lt = std::get_if<TriangularBoundary>(&c.left);
  if (rt && lt) return {*rt, *lt};
  const TriangularizationResult t = triangularize(as_general(c.right), as_general(c.left));
  return {t.right_tri, t.left_tri};
}

// --- subcommands ---------------------------------------------------------

int cmd_check(const Context& ctx, const std::string& suite) {
  std::vector<std::string> selection;
  std::stringstream ss(suite);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) selection.push_back(item);
  }
  const std::vector<CheckReport> reports = run_suite(ctx.config.suite(ctx.seed), selection);
  json j = suite_to_json(reports);
  j["seed"] = ctx.seed;
  j["metadata"] = metadata();
  emit(j, ctx.out);
  for (const CheckReport& r : reports) {
    if (!r.acceptable()) std::cerr << "not acceptable: " << r.check_name << " (" << to_string(r.kind) << ")\n";
  }
  return suite_ok(reports) ? kOk : kFailed;
}

int cmd_solve(const Context& ctx, std::string csv) {
  const RunConfig& c = ctx.config;
  const auto [right, left] = gauge_of(c);
  const SpectralBoundary bnd = SpectralBoundary::from(right, left);
  const auto [n_lo, n_hi] = c.n_bounds();
  const Sampler root(ctx.seed);
  const SuiteConfig sc = c.suite(ctx.seed);

  json states = json::array();
  json per_n = json::array();
  std::ostringstream rows;
  rows.precision(17);
  rows << "state_id,N,probe_re,probe_im,lambda_re,lambda_im,residual\n";
  int state_id = 0;
  int failures = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    SolverConfig cfg = c.solver;
    cfg.seed = root.derive(static_cast<std::uint64_t>(n));
    const SolveResult sr = solve_bethe(n, c.params, bnd, cfg);
    per_n.push_back(json{{"N", n}, {"states", sr.states.size()}, {"diagnostics", sr.diagnostics.to_json()}});
    for (const BetheState& st : sr.states) {
      const EigenpairVerification v =
          verify_eigenpair(st, c.params, right, left, 5, root.derive(1000 + static_cast<std::uint64_t>(state_id)),
                           sc.tol("eigenpair"), sc.tol("spectrum"));
      if (!v.ok()) ++failures;
      json s = to_json(st);
      s["state_id"] = state_id;
      s["verified"] = v.ok();
      s["verification"] = v.report.to_json();
      s["eigenvalues_matched"] = v.eigenvalues_matched;
      states.push_back(s);
      for (const ProbeRow& p : v.probes) {
        rows << state_id << ',' << n << ',' << p.u.real() << ',' << p.u.imag() << ',' << p.lambda.real() << ','
             << p.lambda.imag() << ',' << p.residual << '\n';
      }
      ++state_id;
    }
  }

  const CheckReport coverage = check_spectrum_match(c.params, right, left, n_hi, ctx.seed, c.solver,
                                                    sc.tol("spectrum"));
  json j{{"model", to_json(c.params)},
         {"right", to_json(right)},
         {"left", to_json(left)},
         {"seed", ctx.seed},
         {"N_range", {n_lo, n_hi}},
         {"per_N", per_n},
         {"states", states},
         {"spectrum_coverage", coverage.to_json()},
         {"metadata", metadata()}};
  emit(j, ctx.out);
  if (csv.empty() && !ctx.out.empty()) csv = csv_path_for(ctx.out);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw InputError("cannot write " + csv);
    f << rows.str();
  }
  if (failures > 0) std::cerr << failures << " state(s) failed eigenpair verification\n";
  return failures == 0 ? kOk : kFailed;
}

int cmd_triangularize(const Context& ctx) {
  const GeneralBoundary right = as_general(ctx.config.right);
  const GeneralBoundary left = as_general(ctx.config.left);
  json j{{"right", to_json(right)},
         {"left", to_json(left)},
         {"constraint_value", complex_to_json(constraint_value(right, left))},
         {"constraint_scale", constraint_scale(right, left)},
         {"metadata", metadata()}};
  try {
    const TriangularizationResult t = triangularize(right, left, 1e-8, cx{0.7, 0.3}, ctx.config.params.eta());
    j["triangularizable"] = true;
    j["M"] = matrix_json(t.M);
    j["printed_M"] = t.printed_M;
    j["identity_M"] = t.identity_M;
    j["right_triangular"] = to_json(t.right_tri);
    j["left_triangular"] = to_json(t.left_tri);
    j["lower_left_residuals"] = {t.lower_left_residuals[0], t.lower_left_residuals[1]};
    j["diagonal_residuals"] = {t.diagonal_residuals[0], t.diagonal_residuals[1]};
    j["parameter_map"] = verify_parameter_map(right, left, t).to_json();
    emit(j, ctx.out);
    return kOk;
  } catch (const NotTriangularizableError& e) {
    j["triangularizable"] = false;
    j["error"] = e.what();
    emit(j, ctx.out);
    std::cerr << "constraint violated: " << e.what() << '\n';
    return kFailed;
  }
}

int cmd_spectrum(const Context& ctx, const std::vector<std::string>& point_args) {
  const RunConfig& c = ctx.config;
  std::vector<cx> points;
  for (const std::string& p : point_args) {
    const auto comma = p.find(',');
    try {
      const double re = std::stod(p.substr(0, comma));
      const double im = comma == std::string::npos ? 0.0 : std::stod(p.substr(comma + 1));
      points.emplace_back(re, im);
    } catch (const std::exception&) {
      throw InputError("--point expects RE or RE,IM; got '" + p + "'");
    }
  }
  if (points.empty()) {
    const auto grid = fingerprint_grid();
    points.assign(grid.begin(), grid.end());
  }
  if ((std::size_t{1} << c.params.length()) > 1024) throw InputError("spectrum: L above 10 is not supported");
  json rows = json::array();
  for (cx u : points) {
    const CMatrix t = transfer_matrix(u, c.params, c.right, c.left);
    rows.push_back(json{{"u", complex_to_json(u)}, {"eigenvalues", complex_list(sorted(eigenvalues(t)))}});
  }
  emit(json{{"model", to_json(c.params)},
            {"right", to_json(c.right)},
            {"left", to_json(c.left)},
            {"spectra", rows},
            {"metadata", metadata()}},
       ctx.out);
  return kOk;
}

int cmd_hamiltonian(const Context& ctx) {
  const RunConfig& c = ctx.config;
  const ModelParams hp = ModelParams::homogeneous(c.params.eta(), c.params.length());
  const GeneralBoundary right = as_general(c.right), left = as_general(c.left);
  const CMatrix h = build_hamiltonian(hp, right, left);
  const SuiteConfig sc = c.suite(ctx.seed);
  const cx eta = hp.eta();
  const CheckReport derived =
      check_hamiltonian(hp, right, left, hamiltonian_derivative_factor(eta, right, left), "hamiltonian",
                        sc.tol("hamiltonian"));
  CheckReport printed = check_hamiltonian(hp, right, left,
                                          std::pow(eta, 2 * hp.length() - 1) / (8.0 * right.alpha * left.alpha),
                                          "hamiltonian_printed_normalization", sc.tol("hamiltonian"));
  printed.kind = CheckKind::informational;
  json j{{"model", to_json(hp)},
         {"right", to_json(right)},
         {"left", to_json(left)},
         {"eigenvalues", complex_list(sorted(eigenvalues(h)))},
         {"derivative_factor", complex_to_json(hamiltonian_derivative_factor(eta, right, left))},
         {"checks", {derived.to_json(), printed.to_json()}},
         {"metadata", metadata()}};
  if (!c.params.is_homogeneous()) j["note"] = "inhomogeneities ignored: H is defined at xi_j = 0";
  emit(j, ctx.out);
  return derived.passed ? kOk : kFailed;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON run configuration");
  sub->add_option("--seed", c.seed, "Master seed (overrides OPENCHAIN_SEED and the config)");
  sub->add_option("--out", c.out, "Output path (default: stdout)");
  sub->add_option("--tol", c.tols, "Tolerance override NAME=VAL (repeatable)")->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open XXX chain: verification suite, Bethe solver and triangularization"};
  app.require_subcommand(1);

  Common common;
  std::string suite;
  std::string csv;
  std::vector<std::string> points;

  auto* check = app.add_subcommand("check", "Run verification checks and write a JSON report");
  add_common(check, common);
  check->add_option("--suite", suite, "Comma-separated check names (default: all)");
  auto* solve = app.add_subcommand("solve", "Solve the Bethe equations and verify the eigenpairs");
  add_common(solve, common);
  solve->add_option("--csv", csv, "CSV companion path (default: --out with .csv)");
  auto* tri = app.add_subcommand("triangularize", "Find the common triangular gauge of both boundaries");
  add_common(tri, common);
  auto* spec = app.add_subcommand("spectrum", "Dense spectrum of t(u) at the given points");
  add_common(spec, common);
  spec->add_option("--point", points, "Spectral point RE[,IM] (repeatable)")->take_all();
  auto* ham = app.add_subcommand("hamiltonian", "Hamiltonian and its relation to t'(0)");
  add_common(ham, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Context ctx = load(common);
    if (check->parsed()) return cmd_check(ctx, suite);
    if (solve->parsed()) return cmd_solve(ctx, csv);
    if (tri->parsed()) return cmd_triangularize(ctx);
    if (spec->parsed()) return cmd_spectrum(ctx, points);
    if (ham->parsed()) return cmd_hamiltonian(ctx);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kInputError;
}
