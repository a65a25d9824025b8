// Acceptance run: one PASS/FAIL line per criterion.
//
//   openchain_acceptance [--seed N] [--known-failures 11,...]
//
// Exit status is 0 when every criterion passes. With --known-failures the
// status is 0 when the failing set is exactly the listed one, so a listed
// criterion that starts passing also breaks the run.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "openchain/bethe.hpp"
#include "openchain/errors.hpp"
#include "openchain/lattice.hpp"
#include "openchain/sampling.hpp"
#include "openchain/triangular.hpp"
#include "openchain/verify.hpp"

using namespace openchain;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Gauged {
  ModelParams params;
  TriangularBoundary right, left;
};

// Random chain of length L with a constraint-surface boundary pair taken to
// the triangular gauge.
Gauged draw(Sampler& s, int length) {
  for (;;) {
    const ModelParams p = random_model(s, length);
    const auto [r, l] = constraint_surface_pair(s);
    try {
      const TriangularizationResult t = triangularize(r, l);
      return {p, t.right_tri, t.left_tri};
    } catch (const Error&) {
    }
  }
}

SolverConfig solver(std::uint64_t seed) {
  SolverConfig c;
  c.starts = 120;
  c.seed = seed;
  return c;
}

Outcome c1_ybe(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const CheckReport r = check_ybe(1.0, 200, seed, 1e-12);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {r.passed && secs < 1.0, "max rel residual " + fmt(r.max_residual) + ", " + fmt(secs) + " s"};
}

Outcome c2_unitarity(std::uint64_t seed) {
  const CheckReport r = check_unitarity(1.0, 50, seed, 1e-12);
  return {r.passed, "max residual " + fmt(r.max_residual)};
}

Outcome c3_reflection(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler s(seed);
  double worst = 0.0;
  bool ok = true;
  for (int length : {2, 3}) {
    for (int d = 0; d < 3; ++d) {
      const ModelParams p = random_model(s, length);
      const GeneralBoundary r = constraint_surface_pair(s).first;
      const CheckReport rep = check_reflection(p, Boundary{r}, 10, s.derive(d), 1e-9);
      ok = ok && rep.passed;
      worst = std::max(worst, rep.max_residual);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok && secs < 30.0, "max rel residual " + fmt(worst) + " over 6 draws, " + fmt(secs) + " s"};
}

Outcome c4_dual_reflection(std::uint64_t seed) {
  Sampler s(seed);
  const CheckReport r = check_dual_reflection(random_general_boundary(s), 1.0, 20, seed, 1e-12);
  return {r.passed, "max residual " + fmt(r.max_residual)};
}

Outcome c5_commutation(std::uint64_t seed) {
  Sampler s(seed);
  double worst = 0.0, weakest_control = INFINITY;
  bool ok = true;
  for (int length : {2, 3}) {
    const Gauged g = draw(s, length);
    const CheckReport rep = check_commutation_relations(g.params, Boundary{g.right}, 50, s.derive(length), 1e-9);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.max_residual);
    for (auto ab : {CommutationAblation::drop_g, CommutationAblation::drop_n, CommutationAblation::drop_z}) {
      const CheckReport ctl = check_commutation_relations(g.params, Boundary{g.right}, 5, s.derive(length), 1e-9, ab);
      weakest_control = std::min(weakest_control, ctl.max_residual);
    }
  }
  ok = ok && weakest_control > 1e-3;
  return {ok, "max residual " + fmt(worst) + ", smallest ablation residual " + fmt(weakest_control)};
}

Outcome c6_vacuum(std::uint64_t seed) {
  Sampler s(seed);
  double worst = 0.0, control = INFINITY;
  bool ok = true;
  for (int length : {2, 3}) {
    const Gauged g = draw(s, length);
    const CheckReport rep = check_vacuum(g.params, g.right, g.left, 10, s.derive(length), 1e-10);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.max_residual);
    GeneralBoundary generic = random_general_boundary(s);
    const CheckReport ctl = check_vacuum_annihilation(g.params, generic, 5, s.derive(10 + length), 1e-10);
    control = std::min(control, ctl.max_residual);
  }
  ok = ok && control > 1e-6;
  return {ok, "max residual " + fmt(worst) + ", |C Omega| in generic gauge >= " + fmt(control)};
}

Outcome c7_actions(std::uint64_t seed) {
  Sampler s(seed);
  double worst = 0.0;
  bool ok = true;
  for (int length : {2, 3}) {
    const Gauged g = draw(s, length);
    std::vector<cx> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(admissible_probe(s, g.params, xs));
    const CheckReport rep = check_action_formulas(g.params, g.right, xs, 3, s.derive(length), 1e-8);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.max_residual);
  }
  return {ok, "max residual " + fmt(worst) + " for l <= 3"};
}

// Verified on-shell states for every (L, N, draw); shared by criteria 8 and 9.
struct OnShell {
  Gauged g;
  BetheState state;
};

struct MainTheorem {
  Outcome outcome;
  std::vector<OnShell> states;
};

MainTheorem c8_main_theorem(std::uint64_t seed) {
  MainTheorem out;
  Sampler s(seed);
  double worst_eig = 0.0, worst_match = 0.0, worst_bethe = 0.0;
  int cells = 0, found = 0;
  for (int length : {2, 3}) {
    for (int d = 0; d < 3; ++d) {
      const Gauged g = draw(s, length);
      const SpectralBoundary bnd = SpectralBoundary::from(g.right, g.left);
      for (int n = 1; n <= length; ++n) {
        ++cells;
        const SolveResult sr = solve_bethe(n, g.params, bnd, solver(s.derive(100 * length + 10 * d + n)));
        bool hit = false;
        for (const BetheState& st : sr.states) {
          if (st.residual_norm >= 1e-11) continue;
          const EigenpairVerification v =
              verify_eigenpair(st, g.params, g.right, g.left, 5, s.derive(1000 + cells), 1e-8, 1e-6);
          if (!v.ok()) continue;
          hit = true;
          worst_eig = std::max(worst_eig, v.report.max_residual);
          worst_match = std::max(worst_match, v.max_eigenvalue_distance);
          worst_bethe = std::max(worst_bethe, st.residual_norm);
          out.states.push_back({g, st});
          break;
        }
        if (hit) {
          ++found;
        } else {
          out.outcome.notes.push_back("no verified state at L=" + std::to_string(length) +
                                      " N=" + std::to_string(n) + " draw " + std::to_string(d));
        }
      }
    }
  }
  out.outcome.pass = found == cells;
  out.outcome.detail = std::to_string(found) + "/" + std::to_string(cells) + " (L,N,draw) cells verified; bethe " +
                       fmt(worst_bethe) + ", eigenpair " + fmt(worst_eig) + ", dense match " + fmt(worst_match);
  return out;
}

Outcome c9_proof(const std::vector<OnShell>& states, std::uint64_t seed) {
  if (states.empty()) return {false, "no on-shell states from criterion 8"};
  double worst = 0.0, worst_dual = 0.0, control = INFINITY;
  bool ok = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& [g, st] = states[i];
    const CheckReport rep = check_proof_coefficients(st.roots, g.params, g.right, g.left, 10, seed + i, 1e-7);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.max_residual);
    if (st.n >= 2) {
      const CheckReport dual = check_proof_dual_form(st.roots, g.params, g.right, g.left, 10, seed + i, 1e-7);
      ok = ok && dual.passed;
      worst_dual = std::max(worst_dual, dual.max_residual);
    }
    std::vector<cx> shifted(st.roots.roots().begin(), st.roots.roots().end());
    shifted[0] += 0.1;
    control = std::min(control, check_proof_coefficients(RootSet(shifted), g.params, g.right, g.left, 5, seed + i)
                                    .max_residual);
  }
  ok = ok && control > 1e-3;
  return {ok, "coef1 " + fmt(worst) + ", X " + fmt(worst_dual) + " on " + std::to_string(states.size()) +
                  " states; smallest off-shell control " + fmt(control)};
}

Outcome c10_transfer(std::uint64_t seed) {
  Sampler s(seed);
  double comm = 0.0, forms = 0.0;
  bool ok = true;
  for (int length : {2, 3}) {
    const Gauged g = draw(s, length);
    const CheckReport a =
        check_transfer_commutativity(g.params, Boundary{g.right}, Boundary{g.left}, 10, s.derive(length), 1e-10);
    const CheckReport b = check_transfer_forms(g.params, g.right, g.left, 10, s.derive(length), 1e-11);
    ok = ok && a.passed && b.passed;
    comm = std::max(comm, a.max_residual);
    forms = std::max(forms, b.max_residual);
  }
  return {ok, "[t(u),t(v)] " + fmt(comm) + ", trace vs operator form " + fmt(forms)};
}

Outcome c11_hamiltonian(std::uint64_t seed) {
  Sampler s(seed);
  double printed = 0.0, corrected = 0.0;
  for (int length : {2, 3}) {
    const ModelParams p = ModelParams::homogeneous(1.0, length);
    GeneralBoundary r = random_general_boundary(s), l = random_general_boundary(s);
    if (std::abs(r.alpha) < 0.2) r.alpha = 1.0;
    if (std::abs(l.alpha) < 0.2) l.alpha = 1.0;
    const cx eta = p.eta();
    const cx f_printed = std::pow(eta, 2 * length - 1) / (8.0 * r.alpha * l.alpha);
    printed = std::max(printed, check_hamiltonian(p, r, l, f_printed, "printed", 1e-6).max_residual);
    corrected = std::max(
        corrected,
        check_hamiltonian(p, r, l, hamiltonian_derivative_factor(eta, r, l), "corrected", 1e-6).max_residual);
  }
  Outcome o{printed <= 1e-6, "eta^(2L-1)/(8 alpha alpha-bar) normalization, max rel error " + fmt(printed)};
  o.notes.push_back("companion: eta/(4 alpha alpha-bar) normalization, max rel error " + fmt(corrected) +
                    (corrected <= 1e-6 ? " (within 1e-6)" : " (exceeds 1e-6)"));
  return o;
}

Outcome c12_triangularization(std::uint64_t seed) {
  const CheckReport on = check_triangularization_on_surface(100, seed, 1e-10);
  const CheckReport off = check_triangularization_off_surface(100, seed + 1);
  const CheckReport map = check_parameter_map_sampled(100, seed + 2, 1e-10);
  Sampler s(seed + 3);
  double sign = 0.0;
  bool sign_ok = true;
  for (int length : {2, 3}) {
    const Gauged g = draw(s, length);
    const CheckReport b = check_b_sign_invariance(g.params, g.right, g.left, 5, s.derive(length), 1e-8);
    sign_ok = sign_ok && b.passed;
    sign = std::max(sign, b.max_residual);
  }
  return {on.passed && off.passed && map.passed && sign_ok,
          "on-surface " + fmt(on.max_residual) + ", off-surface accepted fraction " + fmt(off.max_residual) +
              ", parameter map " + fmt(map.max_residual) + ", b-sign spectrum " + fmt(sign)};
}

Outcome c13_cbar(std::uint64_t seed) {
  Sampler s(seed);
  double cbar = 0.0, sweep = 0.0;
  bool ok = true;
  const std::vector<cx> cs{0.0, 0.5, cx{-1.0, 0.3}, 2.0, cx{0.2, -1.5}};
  for (int length : {2, 3}) {
    Gauged g = draw(s, length);
    TriangularBoundary left0 = g.left;
    left0.c = 0.0;
    const auto states =
        solve_bethe(2, g.params, SpectralBoundary::from(g.right, left0), solver(s.derive(length))).states;
    if (states.empty()) {
      ok = false;
      continue;
    }
    const CheckReport a = check_cbar_reduction(g.params, g.right, left0, states.front().roots, seed, 1e-14);
    const CheckReport b = check_c_independence(g.params, g.right, g.left, 2, cs, s.derive(10 + length),
                                               solver(s.derive(20 + length)), 1e-9);
    ok = ok && a.passed && b.passed;
    cbar = std::max(cbar, a.max_residual);
    sweep = std::max(sweep, b.max_residual);
  }
  return {ok, "cbar=0 product difference " + fmt(cbar) + ", root multisets across c sweep " + fmt(sweep)};
}

Outcome c14_isospectrality(std::uint64_t seed) {
  Sampler s(seed);
  double worst = 0.0;
  bool ok = true;
  for (int length : {2, 3}) {
    const ModelParams p = random_model(s, length);
    const auto [r, l] = constraint_surface_pair(s);
    const CheckReport rep = check_isospectrality(p, r, l, 5, s.derive(length), 1e-8);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.max_residual);
  }
  return {ok, "max eigenvalue multiset distance " + fmt(worst)};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20121;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else if (a == "--known-failures" && i + 1 < argc) {
      known = parse_list(argv[++i]);
    } else {
      std::cerr << "usage: openchain_acceptance [--seed N] [--known-failures 11,...]\n";
      return 2;
    }
  }

  const Sampler root(seed);
  const auto t0 = std::chrono::steady_clock::now();
  std::set<int> failed;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%s  C%-2d %-28s %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    for (const std::string& n : o.notes) std::printf("          %s\n", n.c_str());
    std::fflush(stdout);
  };

  MainTheorem main_theorem;
  report(1, "yang-baxter", [&] { return c1_ybe(root.derive(1)); });
  report(2, "unitarity", [&] { return c2_unitarity(root.derive(2)); });
  report(3, "reflection (dressed B)", [&] { return c3_reflection(root.derive(3)); });
  report(4, "dual reflection", [&] { return c4_dual_reflection(root.derive(4)); });
  report(5, "commutation relations", [&] { return c5_commutation(root.derive(5)); });
  report(6, "pseudo-vacuum", [&] { return c6_vacuum(root.derive(6)); });
  report(7, "action formulas", [&] { return c7_actions(root.derive(7)); });
  report(8, "bethe eigenpairs", [&] {
    main_theorem = c8_main_theorem(root.derive(8));
    return main_theorem.outcome;
  });
  report(9, "proof coefficients", [&] { return c9_proof(main_theorem.states, root.derive(9)); });
  report(10, "transfer matrix", [&] { return c10_transfer(root.derive(10)); });
  report(11, "hamiltonian", [&] { return c11_hamiltonian(root.derive(11)); });
  report(12, "triangularization", [&] { return c12_triangularization(root.derive(12)); });
  report(13, "cbar reduction, c sweep", [&] { return c13_cbar(root.derive(13)); });
  report(14, "isospectrality", [&] { return c14_isospectrality(root.derive(14)); });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%zu/14 criteria passed in %.1f s (seed %llu)\n", 14 - failed.size(), secs,
              static_cast<unsigned long long>(seed));
  if (!known.empty()) {
    if (failed == known) {
      std::printf("failing set matches --known-failures\n");
      return 0;
    }
    std::printf("failing set differs from --known-failures\n");
    return 1;
  }
  return failed.empty() ? 0 : 1;
}
