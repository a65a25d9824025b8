#include "openchain/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "openchain/errors.hpp"
#include "openchain/kernels.hpp"
#include "openchain/sampling.hpp"

namespace openchain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRedraws = 1000;

CheckReport make_report(std::string name, std::uint64_t seed, double tol, json parameters = json::object(),
                        CheckKind kind = CheckKind::normative) {
  CheckReport r;
  r.check_name = std::move(name);
  r.seed = seed;
  r.tolerance = tol;
  r.parameters = std::move(parameters);
  r.kind = kind;
  return r;
}

json points_json(const std::vector<cx>& pts) {
  json j = json::array();
  for (cx z : pts) j.push_back(complex_to_json(z));
  return j;
}

// 2d x 2d operator with auxiliary leg first, lifted to (aux1, aux2, quantum).
CMatrix lift_aux(const CMatrix& b, int which) {
  const std::size_t d = b.rows() / 2;
  CMatrix out(4 * d, 4 * d);
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t a2 = 0; a2 < 2; ++a2)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t q = 0; q < d; ++q)
          for (std::size_t p = 0; p < d; ++p) {
            if (which == 1) {
              // acts on aux1: (a1, a2, q) -> (c, a2, p)
              out((a1 * 2 + a2) * d + q, (c * 2 + a2) * d + p) = b(a1 * d + q, c * d + p);
            } else {
              out((a1 * 2 + a2) * d + q, (a1 * 2 + c) * d + p) = b(a2 * d + q, c * d + p);
            }
          }
  return out;
}

double vec_residual(const CVector& lhs, const CVector& rhs) { return relative_difference(lhs, rhs); }

// Vector |B(x_S)> for the positions in `keep` (in order).
std::vector<cx> pick(std::span<const cx> xs, const std::vector<int>& keep) {
  std::vector<cx> out;
  for (int i : keep) out.push_back(xs[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<int> all_but(int n, int a, int b = -1) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (i != a && i != b) out.push_back(i);
  return out;
}

// Draws u until `f(u)` completes without a PoleError.
template <class Fn>
void with_admissible(Sampler& s, const ModelParams& params, std::span<const cx> avoid, Fn&& f) {
  for (int attempt = 0; attempt < kRedraws; ++attempt) {
    const cx u = admissible_probe(s, params, avoid);
    try {
      f(u);
      return;
    } catch (const PoleError&) {
    }
  }
  throw NumericalError("no admissible spectral point found");
}

CMatrix corrupted_R(cx u, cx eta) {
  const RWeights w = r_weights(u, eta);
  const cx c = 1.1 * w.c;
  return CMatrix{{w.a, 0, 0, 0}, {0, w.b, c, 0}, {0, c, w.b, 0}, {0, 0, 0, w.a}};
}

}  // namespace

// --- R-matrix ----------------------------------------------------------------

double ybe_residual(const RFunction& r, cx u, cx v, cx w) {
  const CMatrix r12 = embed_two_leg(r(u - v), 0, 1, 3);
  const CMatrix r13 = embed_two_leg(r(u - w), 0, 2, 3);
  const CMatrix r23 = embed_two_leg(r(v - w), 1, 2, 3);
  const CMatrix lhs = r12 * r13 * r23;
  const CMatrix rhs = r23 * r13 * r12;
  const double n = lhs.frobenius_norm();
  return n > 0.0 ? (lhs - rhs).frobenius_norm() / n : (lhs - rhs).frobenius_norm();
}

CheckReport check_ybe(const RFunction& r, const std::string& name, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report(name, seed, tol);
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    const cx u = s.annulus(), v = s.annulus(), w = s.annulus();
    pts.insert(pts.end(), {u, v, w});
    rep.record(ybe_residual(r, u, v, w));
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

CheckReport check_ybe(cx eta, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = check_ybe([eta](cx u) { return build_R(u, eta); }, "ybe", samples, seed, tol);
  rep.parameters["eta"] = complex_to_json(eta);
  return rep;
}

CheckReport check_unitarity(cx eta, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("unitarity", seed, tol, json{{"eta", complex_to_json(eta)}});
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    const cx u = s.annulus();
    pts.push_back(u);
    const CMatrix lhs = build_R(u, eta) * build_R(-u, eta);
    const CMatrix rhs = (eta * eta - u * u) * CMatrix::identity(4);
    rep.record(relative_difference(lhs, rhs));
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

// --- reflection ----------------------------------------------------------------

double reflection_residual(const ModelParams& params, const KFunction& k, cx u, cx v) {
  const cx eta = params.eta();
  const std::size_t d = std::size_t{1} << params.length();
  const CMatrix bu = build_double_row(u, params, k(u)).assembled();
  const CMatrix bv = build_double_row(v, params, k(v)).assembled();
  const CMatrix b1 = lift_aux(bu, 1);
  const CMatrix b2 = lift_aux(bv, 2);
  const CMatrix r_minus = kron(build_R(u - v, eta), CMatrix::identity(d));
  const CMatrix r_plus = kron(build_R(u + v, eta), CMatrix::identity(d));
  const CMatrix lhs = r_minus * b1 * r_plus * b2;
  const CMatrix rhs = b2 * r_plus * b1 * r_minus;
  return relative_difference(lhs, rhs);
}

CheckReport check_reflection(const ModelParams& params, const KFunction& k, const std::string& name, int samples,
                             std::uint64_t seed, double tol) {
  CheckReport rep = make_report(name, seed, tol, json{{"model", to_json(params)}});
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    for (int attempt = 0;; ++attempt) {
      const cx u = admissible_spectral_point(s, params);
      const cx v = admissible_spectral_point(s, params);
      try {
        const double r = reflection_residual(params, k, u, v);
        pts.insert(pts.end(), {u, v});
        rep.record(r);
        break;
      } catch (const PoleError&) {
        if (attempt > kRedraws) throw;
      }
    }
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

CheckReport check_reflection(const ModelParams& params, const Boundary& right, int samples, std::uint64_t seed,
                             double tol) {
  const cx eta = params.eta();
  CheckReport rep = check_reflection(
      params, [&](cx u) { return build_K(u, right, Side::right, eta); }, "reflection", samples, seed, tol);
  rep.parameters["right"] = to_json(right);
  return rep;
}

// --- exchange relations ----------------------------------------------------------

CheckReport check_commutation_relations(const ModelParams& params, const Boundary& right, int samples,
                                        std::uint64_t seed, double tol, CommutationAblation ablation) {
  std::string name = "commutation";
  CheckKind kind = CheckKind::normative;
  switch (ablation) {
    case CommutationAblation::none:
      break;
    case CommutationAblation::drop_g:
      name = "commutation_control_drop_g";
      kind = CheckKind::control;
      break;
    case CommutationAblation::drop_n:
      name = "commutation_control_drop_n";
      kind = CheckKind::control;
      break;
    case CommutationAblation::drop_z:
      name = "commutation_control_drop_z";
      kind = CheckKind::control;
      break;
  }
  CheckReport rep = make_report(name, seed, tol, json{{"model", to_json(params)}, {"right", to_json(right)}}, kind);
  const cx eta = params.eta();
  Sampler s(seed);
  std::array<double, 4> worst{};
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    for (int attempt = 0;; ++attempt) {
      const cx u = admissible_spectral_point(s, params);
      const cx v = admissible_spectral_point(s, params);
      try {
        if (std::abs(u - v) < 0.05) throw PoleError("commutation", "u - v", std::abs(u - v));
        const ExchangeKernels e = exchange_kernels(u, v, eta);
        const CbKernels c = cb_kernels(u, v, eta);
        const DoubleRowBlocks x = build_double_row(u, params, right);
        const DoubleRowBlocks y = build_double_row(v, params, right);
        std::array<double, 4> r{};
        r[0] = relative_difference(x.B * y.B, y.B * x.B);
        {
          CMatrix rhs = e.f * (y.B * x.A) + e.w * (x.B * y.D);
          if (ablation != CommutationAblation::drop_g) rhs += e.g * (x.B * y.A);
          r[1] = relative_difference(x.A * y.B, rhs);
        }
        {
          CMatrix rhs = e.h * (y.B * x.D) + e.k * (x.B * y.D);
          if (ablation != CommutationAblation::drop_n) rhs += e.n * (x.B * y.A);
          r[2] = relative_difference(x.D * y.B, rhs);
        }
        {
          CMatrix rhs = c.m * (y.A * x.A) + c.l * (x.A * y.A) + c.q * (y.A * x.D) + c.p * (x.A * y.D) +
                        c.y * (x.D * y.A);
          if (ablation != CommutationAblation::drop_z) rhs += c.z * (x.D * y.D);
          r[3] = relative_difference(commutator(x.C, y.B), rhs);
        }
        for (std::size_t k = 0; k < 4; ++k) {
          worst[k] = std::max(worst[k], r[k]);
          rep.record(r[k]);
        }
        pts.insert(pts.end(), {u, v});
        break;
      } catch (const PoleError&) {
        if (attempt > kRedraws) throw;
      }
    }
  }
  rep.parameters["points"] = points_json(pts);
  rep.parameters["per_relation"] =
      json{{"BB", worst[0]}, {"AB", worst[1]}, {"DB", worst[2]}, {"CB", worst[3]}};
  rep.finalize();
  return rep;
}

// --- actions on B-products ----------------------------------------------------------

namespace {

cx creation_F_swapped(cx u, std::span<const cx> xs, int i, int j, const ModelParams& params,
                      const TriangularBoundary& right) {
  const cx eta = params.eta();
  const std::vector<cx> rest = pick(xs, all_but(static_cast<int>(xs.size()), i, j));
  const cx xi = xs[static_cast<std::size_t>(i)], xj = xs[static_cast<std::size_t>(j)];
  const auto [l1i, l2i] = dressed_lambdas(xi, rest, params, right);
  const auto [l1j, l2j] = dressed_lambdas(xj, rest, params, right);
  const ZKernels zij = z_kernels(u, xi, xj, eta);
  const ZKernels zji = z_kernels(u, xj, xi, eta);
  return l1i * (zij.z11 * l1j + zji.z12 * l2j) + l2i * (zij.z12 * l1j + zij.z22 * l2j);
}

}  // namespace

CheckReport check_action_formulas(const ModelParams& params, const TriangularBoundary& right,
                                  std::span<const cx> xs, int samples, std::uint64_t seed, double tol,
                                  ActionAblation ablation) {
  const bool swap = ablation == ActionAblation::swap_z12;
  CheckReport rep = make_report(swap ? "actions_control_swap_z12" : "actions", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"xs", points_json({xs.begin(), xs.end()})}},
                                swap ? CheckKind::control : CheckKind::normative);
  Sampler s(seed);
  std::vector<cx> pts;
  double worst_a = 0, worst_d = 0, worst_c = 0;
  for (std::size_t ell = 1; ell <= xs.size(); ++ell) {
    const std::span<const cx> x = xs.first(ell);
    const int n = static_cast<int>(ell);
    const CVector bx = b_product_on_vacuum(x, params, right);
    std::vector<CVector> without_one;
    for (int k = 0; k < n; ++k) without_one.push_back(b_product_on_vacuum(pick(x, all_but(n, k)), params, right));
    for (int sample = 0; sample < samples; ++sample) {
      with_admissible(s, params, x, [&](cx u) {
        const DoubleRowBlocks ops = build_double_row(u, params, Boundary{right});
        const auto [l1, l2] = dressed_lambdas(u, x, params, right);
        CVector rhs_a = l1 * bx, rhs_d = l2 * bx, rhs_c(bx.dim());
        for (int k = 0; k < n; ++k) {
          const OffDiagonal mn = offdiag_MN(u, x, k, params, right);
          const CVector bw = ops.B * without_one[static_cast<std::size_t>(k)];
          rhs_a += mn.m * bw;
          rhs_d += mn.n * bw;
          rhs_c += creation_G(u, x, k, params, right) * without_one[static_cast<std::size_t>(k)];
        }
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            const cx f = swap ? creation_F_swapped(u, x, i, j, params, right)
                              : creation_F(u, x, i, j, params, right);
            rhs_c += f * (ops.B * b_product_on_vacuum(pick(x, all_but(n, i, j)), params, right));
          }
        const double ra = vec_residual(ops.A * bx, rhs_a);
        const double rd = vec_residual(ops.D * bx, rhs_d);
        const double rc = vec_residual(ops.C * bx, rhs_c);
        worst_a = std::max(worst_a, ra);
        worst_d = std::max(worst_d, rd);
        worst_c = std::max(worst_c, rc);
        if (!swap) {
          rep.record(ra);
          rep.record(rd);
        }
        rep.record(rc);
        pts.push_back(u);
      });
    }
  }
  rep.parameters["points"] = points_json(pts);
  rep.parameters["per_action"] = json{{"A", worst_a}, {"D", worst_d}, {"C", worst_c}};
  rep.finalize();
  return rep;
}

// --- pseudo-vacuum ------------------------------------------------------------------

CheckReport check_vacuum(const ModelParams& params, const TriangularBoundary& right, const TriangularBoundary& left,
                         int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report(
      "vacuum", seed, tol, json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}});
  const cx eta = params.eta();
  const CVector omega = vacuum(params.length());
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, {}, [&](cx u) {
      const DoubleRowBlocks ops = build_double_row(u, params, Boundary{right});
      const auto [l1, l2] = vacuum_lambdas(u, params, right);
      const cx lambda = kappa1(u, left.a, left.b, eta) * l1 + kappa2(u, left.a, left.b, eta) * l2;
      const CMatrix t = transfer_matrix(u, params, Boundary{right}, Boundary{left});
      auto rel = [](const CVector& v, const CMatrix& op) {
        const double n = op.frobenius_norm();
        return n > 0.0 ? v.norm() / n : v.norm();
      };
      rep.record(rel(ops.A * omega - l1 * omega, ops.A));
      rep.record(rel(ops.D * omega - l2 * omega, ops.D));
      rep.record(rel(ops.C * omega, ops.C));
      rep.record(rel(t * omega - lambda * omega, t));
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

CheckReport check_vacuum_annihilation(const ModelParams& params, const GeneralBoundary& right, int samples,
                                      std::uint64_t seed, double tol) {
  CheckReport rep = make_report("vacuum_control_nontriangular", seed, tol,
                                json{{"model", to_json(params)}, {"right", to_json(right)}}, CheckKind::control);
  const CVector omega = vacuum(params.length());
  Sampler s(seed);
  // A control fails when any sample exposes C|Omega> != 0, so report the smallest.
  double smallest = kInf;
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, {}, [&](cx u) {
      const DoubleRowBlocks ops = build_double_row(u, params, Boundary{right});
      const double n = ops.C.frobenius_norm();
      smallest = std::min(smallest, n > 0.0 ? (ops.C * omega).norm() / n : 0.0);
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.record(smallest);
  rep.samples = samples;
  rep.finalize();
  return rep;
}

// --- proof coefficients --------------------------------------------------------------

CheckReport check_proof_coefficients(const RootSet& roots, const ModelParams& params,
                                     const TriangularBoundary& right, const TriangularBoundary& left, int samples,
                                     std::uint64_t seed, double tol) {
  json roots_json = json::array();
  for (cx r : roots.roots()) roots_json.push_back(complex_to_json(r));
  CheckReport rep = make_report("proof_coefficients", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"roots", roots_json}});
  Sampler s(seed);
  const auto sets = enumerate_index_sets(roots.size());
  double worst_coef1 = 0.0, worst_x = 0.0;
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, roots.roots(), [&](cx u) {
      std::vector<double> rs;
      for (const IndexSet& I : sets) {
        const int comp = roots.size() - I.size();
        if (comp >= 1) {
          const double r = proof_coef1(u, I, roots, params, right, left).relative();
          worst_coef1 = std::max(worst_coef1, r);
          rs.push_back(r);
        }
        if (comp >= 2) {
          const double r = proof_X(u, I, roots, params, right, left).relative();
          worst_x = std::max(worst_x, r);
          rs.push_back(r);
        }
      }
      for (double r : rs) rep.record(r);
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.parameters["max_coef1"] = worst_coef1;
  rep.parameters["max_X"] = worst_x;
  if (roots.size() < 2) rep.notes.push_back("fewer than two roots: X has no pair terms");
  rep.finalize();
  return rep;
}

CheckReport check_proof_dual_form(const RootSet& roots, const ModelParams& params, const TriangularBoundary& right,
                                  const TriangularBoundary& left, int samples, std::uint64_t seed, double tol) {
  json roots_json = json::array();
  for (cx r : roots.roots()) roots_json.push_back(complex_to_json(r));
  CheckReport rep = make_report("proof_dual_form", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"roots", roots_json}});
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, roots.roots(), [&](cx u) {
      std::vector<double> rs;
      for (const IndexSet& I : enumerate_index_sets(roots.size())) {
        if (roots.size() - I.size() < 2) continue;
        const CancellingSum x = proof_X(u, I, roots, params, right, left);
        const CancellingSum xr = proof_X_rewritten(u, I, roots, params, right, left);
        rs.push_back(std::abs(x.value - xr.value) / std::max({1.0, x.term_scale, xr.term_scale}));
      }
      for (double r : rs) rep.record(r);
      pts.push_back(u);
    });
  }
  if (roots.size() < 2) rep.notes.push_back("fewer than two roots: nothing to compare");
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

// --- spectra ---------------------------------------------------------------------

double spectrum_distance(const std::vector<cx>& a, const std::vector<cx>& b) {
  double scale = 1.0;
  for (cx z : a) scale = std::max(scale, std::abs(z));
  return multiset_distance(a, b) / scale;
}

CheckReport check_spectrum_match(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int n_max, std::uint64_t seed,
                                 const SolverConfig& solver, double tol, cx lambda_scale) {
  const bool control = lambda_scale != cx{1.0};
  CheckReport rep = make_report(control ? "spectrum_control_corrupted_lambda" : "spectrum", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"n_max", n_max}},
                                control ? CheckKind::control : CheckKind::normative);
  const std::size_t dim = std::size_t{1} << params.length();
  if (dim > 64) {
    rep.notes.push_back("dimension above 64: dense comparison skipped");
    rep.finalize();
    return rep;
  }
  const SpectralBoundary bnd = SpectralBoundary::from(right, left);
  Sampler s(seed);
  std::vector<BetheState> verified;
  std::vector<cx> all_roots;
  int found = 0, rejected = 0;
  for (int n = 0; n <= n_max; ++n) {
    SolverConfig cfg = solver;
    cfg.seed = Sampler(seed).derive(static_cast<std::uint64_t>(n));
    for (const BetheState& st : solve_bethe(n, params, bnd, cfg).states) {
      ++found;
      if (verify_eigenpair(st, params, right, left, 3, s.derive(static_cast<std::uint64_t>(found))).ok()) {
        verified.push_back(st);
        all_roots.insert(all_roots.end(), st.roots.roots().begin(), st.roots.roots().end());
      } else {
        ++rejected;
      }
    }
  }
  double fraction = 1.0;
  std::vector<cx> pts;
  for (int p = 0; p < 3; ++p) {
    with_admissible(s, params, all_roots, [&](cx u) {
      std::vector<cx> lambdas;
      for (const BetheState& st : verified) lambdas.push_back(lambda_scale * eigenvalue_Lambda(u, st.roots, params, bnd));
      const std::vector<cx> ev = eigenvalues(transfer_matrix(u, params, Boundary{right}, Boundary{left}));
      std::vector<bool> used(ev.size(), false);
      std::vector<int> family_seen;
      int matched = 0;
      for (std::size_t k = 0; k < verified.size(); ++k) {
        const cx lam = lambdas[k];
        double best = kInf;
        for (cx e : ev) best = std::min(best, std::abs(e - lam) / std::max(1.0, std::abs(lam)));
        rep.record(best);
        // One eigenvalue per spectral family counts towards coverage.
        if (std::find(family_seen.begin(), family_seen.end(), verified[k].family * 1000 + verified[k].n) !=
            family_seen.end())
          continue;
        family_seen.push_back(verified[k].family * 1000 + verified[k].n);
        std::size_t arg = ev.size();
        double d = kInf;
        for (std::size_t e = 0; e < ev.size(); ++e) {
          if (used[e]) continue;
          const double de = std::abs(ev[e] - lam) / std::max(1.0, std::abs(lam));
          if (de < d) {
            d = de;
            arg = e;
          }
        }
        if (arg < ev.size() && d <= tol) {
          used[arg] = true;
          ++matched;
        }
      }
      fraction = std::min(fraction, static_cast<double>(matched) / static_cast<double>(dim));
      pts.push_back(u);
    });
  }
  if (verified.empty()) rep.record(kInf);
  rep.parameters["points"] = points_json(pts);
  rep.parameters["states_found"] = found;
  rep.parameters["states_verified"] = verified.size();
  rep.parameters["states_rejected"] = rejected;
  rep.parameters["matched_fraction"] = fraction;
  rep.notes.push_back("matched fraction of the spectrum: " + std::to_string(fraction));
  rep.finalize();
  return rep;
}

// --- cbar = 0 and c-independence ------------------------------------------------------

CheckReport check_cbar_reduction(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, const RootSet& roots, std::uint64_t seed,
                                 double tol) {
  json roots_json = json::array();
  for (cx r : roots.roots()) roots_json.push_back(complex_to_json(r));
  CheckReport rep = make_report("cbar_reduction", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"roots", roots_json}});
  const BetheState st = make_state(roots, params, SpectralBoundary::from(right, left));
  const CVector phi = build_bethe_vector(st, params, right, left).vector;
  const CVector prod = b_product_on_vacuum(roots.roots(), params, right);
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.dim(); ++i) worst = std::max(worst, std::abs(phi[i] - prod[i]));
  const double n = prod.norm();
  rep.record(n > 0.0 ? worst / n : worst);
  rep.finalize();
  return rep;
}

CheckReport check_c_independence(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int n, std::span<const cx> c_values,
                                 std::uint64_t seed, const SolverConfig& solver, double tol) {
  CheckReport rep = make_report("c_independence", seed, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"N", n},
                                     {"c_values", points_json({c_values.begin(), c_values.end()})}});
  SolverConfig cfg = solver;
  cfg.seed = seed;
  std::vector<BetheState> reference;
  json verified = json::array();
  for (std::size_t i = 0; i < c_values.size(); ++i) {
    TriangularBoundary r = right, l = left;
    r.c = c_values[i];
    l.c = c_values[(i + 2) % c_values.size()];
    const std::vector<BetheState> states = solve_bethe(n, params, SpectralBoundary::from(r, l), cfg).states;
    if (i == 0) {
      reference = states;
    } else {
      if (states.size() != reference.size()) {
        rep.record(kInf);
        rep.notes.push_back("state count changed along the sweep");
      } else {
        for (std::size_t k = 0; k < states.size(); ++k) {
          const std::vector<cx> a(states[k].roots.roots().begin(), states[k].roots.roots().end());
          const std::vector<cx> b(reference[k].roots.roots().begin(), reference[k].roots.roots().end());
          rep.record(multiset_distance(a, b));
        }
      }
    }
    int ok = 0;
    for (const BetheState& st : states)
      if (verify_eigenpair(st, params, r, l, 3, Sampler(seed).derive(i)).ok()) ++ok;
    verified.push_back(ok);
    if (n > 0 && ok == 0) {
      rep.record(kInf);
      rep.notes.push_back("no verified eigenpair at sweep point " + std::to_string(i));
    }
  }
  rep.parameters["verified_per_point"] = verified;
  if (rep.samples == 0) rep.record(0.0);
  rep.finalize();
  return rep;
}

// --- transfer matrix ---------------------------------------------------------------

CheckReport probe_crossing(const ModelParams& params, const Boundary& right, const Boundary& left, int samples,
                           std::uint64_t seed) {
  CheckReport rep = make_report(
      "crossing", seed, 0.0, json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}},
      CheckKind::informational);
  const cx eta = params.eta();
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    for (int attempt = 0;; ++attempt) {
      const cx u = admissible_spectral_point(s, params);
      try {
        const CMatrix a = transfer_matrix(u, params, right, left);
        const CMatrix b = transfer_matrix(-u - eta, params, right, left);
        rep.record((a - b).frobenius_norm() / std::max(a.frobenius_norm(), 1e-300));
        pts.push_back(u);
        break;
      } catch (const PoleError&) {
        if (attempt > kRedraws) throw;
      }
    }
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  rep.notes.push_back("informational: t(-u-eta) = t(u) is not asserted");
  return rep;
}

CheckReport check_transfer_commutativity(const ModelParams& params, const Boundary& right, const Boundary& left,
                                         int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("transfer_commutativity", seed, tol,
                                json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}});
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    for (int attempt = 0;; ++attempt) {
      const cx u = admissible_spectral_point(s, params);
      const cx v = admissible_spectral_point(s, params);
      try {
        const CMatrix tu = transfer_matrix(u, params, right, left);
        const CMatrix tv = transfer_matrix(v, params, right, left);
        rep.record(relative_difference(tu * tv, tv * tu));
        pts.insert(pts.end(), {u, v});
        break;
      } catch (const PoleError&) {
        if (attempt > kRedraws) throw;
      }
    }
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

CheckReport check_transfer_forms(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("transfer_forms", seed, tol,
                                json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}});
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, {}, [&](cx u) {
      const TransferMatrix t = build_transfer(u, params, Boundary{right}, Boundary{left}, kInf);
      rep.record(t.form_mismatch);
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

// --- Hamiltonian -----------------------------------------------------------------

CMatrix transfer_derivative_at_zero(const ModelParams& params, const Boundary& right, const Boundary& left,
                                    double step) {
  const CMatrix plus = transfer_matrix(step, params, right, left);
  const CMatrix minus = transfer_matrix(-step, params, right, left);
  return (1.0 / (2.0 * step)) * (plus - minus);
}

CheckReport check_hamiltonian(const ModelParams& params, const GeneralBoundary& right, const GeneralBoundary& left,
                              cx factor, const std::string& name, double tol, double step) {
  CheckReport rep = make_report(name, 0, tol,
                                json{{"model", to_json(params)},
                                     {"right", to_json(right)},
                                     {"left", to_json(left)},
                                     {"factor", complex_to_json(factor)},
                                     {"step", step}});
  const CMatrix h = build_hamiltonian(params, right, left);
  const CMatrix dt = transfer_derivative_at_zero(params, Boundary{right}, Boundary{left}, step);
  rep.record((h - factor * dt).frobenius_norm() / std::max(h.frobenius_norm(), 1e-300));
  rep.finalize();
  return rep;
}

// --- triangularization --------------------------------------------------------------

CheckReport check_triangularization_on_surface(int draws, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("triangularization_on_surface", seed, tol, json{{"draws", draws}});
  Sampler s(seed);
  int printed = 0, fallback = 0, identity = 0;
  for (int i = 0; i < draws; ++i) {
    const auto [right, left] = constraint_surface_pair(s);
    try {
      const TriangularizationResult t = triangularize(right, left);
      rep.record(std::max({t.lower_left_residuals[0], t.lower_left_residuals[1], t.diagonal_residuals[0],
                           t.diagonal_residuals[1]}));
      if (t.printed_M) {
        ++printed;
      } else if (t.identity_M) {
        ++identity;
      } else {
        ++fallback;
      }
    } catch (const Error& e) {
      rep.record(kInf);
      rep.notes.push_back(std::string("draw ") + std::to_string(i) + ": " + e.what());
    }
  }
  rep.parameters["printed_M"] = printed;
  rep.parameters["fallback_M"] = fallback;
  rep.parameters["identity_M"] = identity;
  rep.finalize();
  return rep;
}

CheckReport check_triangularization_off_surface(int draws, std::uint64_t seed) {
  CheckReport rep = make_report("triangularization_off_surface", seed, 0.0, json{{"draws", draws}});
  Sampler s(seed);
  int accepted = 0, drawn = 0;
  while (drawn < draws) {
    const GeneralBoundary right = random_general_boundary(s);
    const GeneralBoundary left = random_general_boundary(s);
    if (std::abs(constraint_value(right, left)) <= 0.1) continue;
    ++drawn;
    try {
      triangularize(right, left);
      ++accepted;
    } catch (const NotTriangularizableError&) {
    }
  }
  rep.record(static_cast<double>(accepted) / std::max(1, draws));
  rep.samples = draws;
  rep.parameters["accepted"] = accepted;
  rep.finalize();
  return rep;
}

CheckReport check_parameter_map_sampled(int draws, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("parameter_map", seed, tol, json{{"draws", draws}});
  Sampler s(seed);
  int checked = 0, skipped = 0;
  for (int i = 0; i < draws; ++i) {
    const auto [right, left] = constraint_surface_pair(s);
    try {
      const TriangularizationResult t = triangularize(right, left);
      if (!t.printed_M && !t.identity_M) {
        ++skipped;
        continue;
      }
      ++checked;
      rep.record(verify_parameter_map(right, left, t, tol).max_residual);
    } catch (const Error& e) {
      rep.record(kInf);
      rep.notes.push_back(e.what());
    }
  }
  rep.parameters["checked"] = checked;
  rep.parameters["fallback_skipped"] = skipped;
  rep.samples = checked;
  rep.finalize();
  return rep;
}

CheckReport check_b_sign_invariance(const ModelParams& params, const TriangularBoundary& right,
                                    const TriangularBoundary& left, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("b_sign_invariance", seed, tol,
                                json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}});
  const TriangularBoundary rf{right.a, -right.b, right.c};
  const TriangularBoundary lf{left.a, -left.b, left.c};
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, {}, [&](cx u) {
      const auto a = eigenvalues(transfer_matrix(u, params, Boundary{right}, Boundary{left}));
      const auto b = eigenvalues(transfer_matrix(u, params, Boundary{rf}, Boundary{lf}));
      rep.record(spectrum_distance(a, b));
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

CheckReport check_isospectrality(const ModelParams& params, const GeneralBoundary& right,
                                 const GeneralBoundary& left, int samples, std::uint64_t seed, double tol) {
  CheckReport rep = make_report("isospectrality", seed, tol,
                                json{{"model", to_json(params)}, {"right", to_json(right)}, {"left", to_json(left)}});
  TriangularizationResult t;
  try {
    t = triangularize(right, left);
  } catch (const Error& e) {
    rep.record(kInf);
    rep.notes.push_back(e.what());
    rep.finalize();
    return rep;
  }
  Sampler s(seed);
  std::vector<cx> pts;
  for (int i = 0; i < samples; ++i) {
    with_admissible(s, params, {}, [&](cx u) {
      const auto a = eigenvalues(transfer_matrix(u, params, Boundary{right}, Boundary{left}));
      const auto b = eigenvalues(transfer_matrix(u, params, Boundary{t.right_tri}, Boundary{t.left_tri}));
      rep.record(spectrum_distance(a, b));
      pts.push_back(u);
    });
  }
  rep.parameters["points"] = points_json(pts);
  rep.finalize();
  return rep;
}

// --- suite ------------------------------------------------------------------------

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"ybe", 1e-12},          {"unitarity", 1e-12},       {"reflection", 1e-9},
      {"dual_reflection", 1e-12}, {"commutation", 1e-9},   {"actions", 1e-8},
      {"vacuum", 1e-10},       {"proof", 1e-7},            {"proof_dual", 1e-9},
      {"eigenpair", 1e-8},     {"spectrum", 1e-6},         {"cbar", 1e-14},
      {"c_independence", 1e-9}, {"transfer_commutativity", 1e-10}, {"transfer_forms", 1e-11},
      {"hamiltonian", 1e-6},   {"triangularization", 1e-10}, {"parameter_map", 1e-10},
      {"isospectrality", 1e-8}, {"b_sign", 1e-8},          {"newton", 1e-11}};
  return tols;
}

double SuiteConfig::tol(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

std::vector<std::string> suite_names() {
  return {"ybe",     "unitarity", "reflection", "dual_reflection", "commutation",      "actions",
          "vacuum",  "eigenpair", "proof",      "spectrum",        "cbar",             "crossing",
          "transfer", "hamiltonian", "triangularization", "isospectrality"};
}

namespace {

struct Gauge {
  std::optional<TriangularBoundary> right, left;
  std::string error;
};

Gauge triangular_gauge(const SuiteConfig& c) {
  Gauge g;
  const auto* rt = std::get_if<TriangularBoundary>(&c.right);
  const auto* lt = std::get_if<TriangularBoundary>(&c.left);
  if (rt && lt) {
    g.right = *rt;
    g.left = *lt;
    return g;
  }
  try {
    const TriangularizationResult t = triangularize(as_general(c.right), as_general(c.left));
    g.right = t.right_tri;
    g.left = t.left_tri;
  } catch (const Error& e) {
    g.error = e.what();
  }
  return g;
}

CheckReport failed(const std::string& name, std::uint64_t seed, const std::string& why) {
  CheckReport r = make_report(name, seed, 0.0);
  r.record(kInf);
  r.notes.push_back(why);
  r.finalize();
  return r;
}

// One on-shell state per N = 1..n_max whose eigenpair verifies.
std::vector<BetheState> verified_states(const SuiteConfig& c, const Gauge& g, std::uint64_t seed, int n_max) {
  std::vector<BetheState> out;
  const SpectralBoundary bnd = SpectralBoundary::from(*g.right, *g.left);
  for (int n = 1; n <= n_max; ++n) {
    SolverConfig cfg = c.solver;
    cfg.seed = Sampler(seed).derive(static_cast<std::uint64_t>(n));
    cfg.newton_tol = c.tol("newton");
    for (const BetheState& st : solve_bethe(n, c.params, bnd, cfg).states) {
      if (verify_eigenpair(st, c.params, *g.right, *g.left, 5, seed, c.tol("eigenpair")).ok()) {
        out.push_back(st);
        break;
      }
    }
  }
  return out;
}

std::vector<CheckReport> run_one(const std::string& name, const SuiteConfig& c, std::uint64_t seed) {
  const ModelParams& p = c.params;
  const cx eta = p.eta();
  const int n_max = c.n_max < 0 ? p.length() : c.n_max;
  std::vector<CheckReport> out;
  auto need_gauge = [&](const Gauge& g, const std::string& check) {
    if (g.right) return true;
    out.push_back(failed(check, seed, "no triangular gauge: " + g.error));
    return false;
  };

  if (name == "ybe") {
    out.push_back(check_ybe(eta, 200, seed, c.tol("ybe")));
    CheckReport ctl = check_ybe([eta](cx u) { return corrupted_R(u, eta); }, "ybe_control_corrupted_R", 20, seed,
                                c.tol("ybe"));
    ctl.kind = CheckKind::control;
    out.push_back(ctl);
  } else if (name == "unitarity") {
    out.push_back(check_unitarity(eta, 50, seed, c.tol("unitarity")));
  } else if (name == "reflection") {
    const GeneralBoundary r = as_general(c.right);
    if (c.right_k_offset) {
      const cx off = *c.right_k_offset;
      CheckReport rep = check_reflection(
          p,
          [r, off](cx u) {
            return CMatrix{{u * r.beta + r.alpha, u * r.gamma + off}, {u * r.delta, -u * r.beta + r.alpha}};
          },
          "reflection", 10, seed, c.tol("reflection"));
      rep.notes.push_back("K(u)_12 offset by " + std::to_string(off.real()) + "+" + std::to_string(off.imag()) + "i");
      out.push_back(rep);
    } else {
      out.push_back(check_reflection(p, c.right, 10, seed, c.tol("reflection")));
    }
    CheckReport ctl = check_reflection(
        p,
        [r](cx u) {
          return CMatrix{{u * r.beta + r.alpha, u * r.gamma + 1.0}, {u * r.delta, -u * r.beta + r.alpha}};
        },
        "reflection_control_corrupted_K", 5, seed, c.tol("reflection"));
    ctl.kind = CheckKind::control;
    out.push_back(ctl);
  } else if (name == "dual_reflection") {
    const GeneralBoundary l = as_general(c.left);
    out.push_back(check_dual_reflection(l, eta, 20, seed, c.tol("dual_reflection")));
    CheckReport ctl = make_report("dual_reflection_control_sign_flip", seed, c.tol("dual_reflection"),
                                  json{{"left", to_json(l)}}, CheckKind::control);
    Sampler s(seed);
    auto bad = [&](cx u) {
      CMatrix k = build_K(u, l, Side::left, eta);
      k(0, 1) = -k(0, 1) + 0.5;
      return k;
    };
    for (int i = 0; i < 20; ++i) {
      const cx u = s.annulus(), v = s.annulus();
      ctl.record(dual_reflection_residual(bad, u, v, eta));
    }
    ctl.finalize();
    out.push_back(ctl);
  } else if (name == "commutation") {
    const double tol = c.tol("commutation");
    out.push_back(check_commutation_relations(p, c.right, 50, seed, tol));
    for (auto ab : {CommutationAblation::drop_g, CommutationAblation::drop_n, CommutationAblation::drop_z}) {
      out.push_back(check_commutation_relations(p, c.right, 5, seed, tol, ab));
    }
  } else if (name == "actions") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "actions")) return out;
    Sampler s(seed);
    std::vector<cx> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(admissible_probe(s, p, xs));
    out.push_back(check_action_formulas(p, *g.right, xs, 3, seed, c.tol("actions")));
    out.push_back(check_action_formulas(p, *g.right, xs, 2, seed, c.tol("actions"), ActionAblation::swap_z12));
  } else if (name == "vacuum") {
    const Gauge g = triangular_gauge(c);
    if (need_gauge(g, "vacuum")) out.push_back(check_vacuum(p, *g.right, *g.left, 10, seed, c.tol("vacuum")));
    GeneralBoundary r = as_general(c.right);
    if (std::abs(r.delta) < 1e-3) r = GeneralBoundary{1.0, 0.4, 0.7, 0.9};
    out.push_back(check_vacuum_annihilation(p, r, 5, seed, c.tol("vacuum")));
  } else if (name == "eigenpair") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "eigenpair")) return out;
    CheckReport rep = make_report("eigenpair", seed, c.tol("eigenpair"),
                                  json{{"model", to_json(p)}, {"right", to_json(*g.right)}, {"left", to_json(*g.left)}});
    const SpectralBoundary bnd = SpectralBoundary::from(*g.right, *g.left);
    json per_n = json::array();
    for (int n = 0; n <= n_max; ++n) {
      SolverConfig cfg = c.solver;
      cfg.seed = Sampler(seed).derive(static_cast<std::uint64_t>(n));
      cfg.newton_tol = c.tol("newton");
      const SolveResult sr = solve_bethe(n, p, bnd, cfg);
      double best = kInf;
      int ok = 0;
      for (const BetheState& st : sr.states) {
        const EigenpairVerification v = verify_eigenpair(st, p, *g.right, *g.left, 5, seed, c.tol("eigenpair"));
        if (v.ok()) {
          ++ok;
          best = std::min(best, v.report.max_residual);
        }
      }
      rep.record(best);
      per_n.push_back(json{{"N", n},
                           {"states", sr.states.size()},
                           {"verified", ok},
                           {"best_residual", std::isfinite(best) ? json(best) : json(nullptr)},
                           {"diagnostics", sr.diagnostics.to_json()}});
    }
    rep.parameters["per_N"] = per_n;
    rep.finalize();
    out.push_back(rep);
  } else if (name == "proof") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "proof_coefficients")) return out;
    const std::vector<BetheState> states = verified_states(c, g, seed, n_max);
    CheckReport rep = make_report("proof_coefficients", seed, c.tol("proof"), json{{"model", to_json(p)}});
    CheckReport dual = make_report("proof_dual_form", seed, c.tol("proof_dual"), json{{"model", to_json(p)}});
    CheckReport ctl = make_report("proof_control_offshell", seed, c.tol("proof"), json{{"model", to_json(p)}},
                                  CheckKind::control);
    for (const BetheState& st : states) {
      const CheckReport r = check_proof_coefficients(st.roots, p, *g.right, *g.left, 10, seed, c.tol("proof"));
      rep.record(r.max_residual);
      if (st.n >= 2) {
        dual.record(check_proof_dual_form(st.roots, p, *g.right, *g.left, 5, seed, c.tol("proof_dual")).max_residual);
        std::vector<cx> shifted(st.roots.roots().begin(), st.roots.roots().end());
        shifted[0] += 0.1;
        ctl.record(check_proof_coefficients(RootSet(shifted), p, *g.right, *g.left, 5, seed, c.tol("proof"))
                       .max_residual);
      }
    }
    if (states.empty()) {
      rep.record(kInf);
      rep.notes.push_back("no verified on-shell state");
    }
    rep.finalize();
    out.push_back(rep);
    if (dual.samples > 0) {
      dual.finalize();
      out.push_back(dual);
    }
    if (ctl.samples > 0) {
      ctl.finalize();
      out.push_back(ctl);
    }
  } else if (name == "spectrum") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "spectrum")) return out;
    SolverConfig cfg = c.solver;
    cfg.newton_tol = c.tol("newton");
    out.push_back(check_spectrum_match(p, *g.right, *g.left, n_max, seed, cfg, c.tol("spectrum")));
    out.push_back(check_spectrum_match(p, *g.right, *g.left, std::min(n_max, 1), seed, cfg, c.tol("spectrum"), 1.01));
  } else if (name == "cbar") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "cbar_reduction")) return out;
    TriangularBoundary left0 = *g.left;
    left0.c = 0.0;
    const int n = std::min(2, p.length());
    SolverConfig cfg = c.solver;
    cfg.seed = seed;
    cfg.newton_tol = c.tol("newton");
    const auto states = solve_bethe(n, p, SpectralBoundary::from(*g.right, left0), cfg).states;
    if (states.empty()) {
      out.push_back(failed("cbar_reduction", seed, "no on-shell state to test"));
    } else {
      out.push_back(check_cbar_reduction(p, *g.right, left0, states.front().roots, seed, c.tol("cbar")));
    }
    const std::vector<cx> cs{0.0, 0.5, cx{-1.0, 0.3}, 2.0, cx{0.2, -1.5}};
    out.push_back(check_c_independence(p, *g.right, *g.left, n, cs, seed, cfg, c.tol("c_independence")));
  } else if (name == "crossing") {
    const Gauge g = triangular_gauge(c);
    if (g.right) {
      out.push_back(probe_crossing(p, Boundary{*g.right}, Boundary{*g.left}, 5, seed));
    } else {
      out.push_back(probe_crossing(p, c.right, c.left, 5, seed));
    }
  } else if (name == "transfer") {
    const Gauge g = triangular_gauge(c);
    if (!need_gauge(g, "transfer")) return out;
    out.push_back(check_transfer_commutativity(p, Boundary{*g.right}, Boundary{*g.left}, 10, seed,
                                               c.tol("transfer_commutativity")));
    out.push_back(check_transfer_forms(p, *g.right, *g.left, 20, seed, c.tol("transfer_forms")));
  } else if (name == "hamiltonian") {
    const ModelParams hp = ModelParams::homogeneous(eta, p.length());
    const GeneralBoundary r = as_general(c.right), l = as_general(c.left);
    if (r.alpha == cx{} || l.alpha == cx{}) {
      out.push_back(failed("hamiltonian", seed, "alpha and alpha-bar must be nonzero"));
      return out;
    }
    CheckReport h = check_hamiltonian(hp, r, l, hamiltonian_derivative_factor(eta, r, l), "hamiltonian",
                                      c.tol("hamiltonian"));
    if (!p.is_homogeneous()) h.notes.push_back("evaluated with all xi_j = 0");
    out.push_back(h);
    const cx printed = std::pow(eta, 2 * p.length() - 1) / (8.0 * r.alpha * l.alpha);
    CheckReport hp_rep = check_hamiltonian(hp, r, l, printed, "hamiltonian_printed_normalization",
                                           c.tol("hamiltonian"));
    hp_rep.kind = CheckKind::informational;
    hp_rep.notes.push_back("eta^(2L-1)/(8 alpha alpha-bar) normalization; informational");
    out.push_back(hp_rep);
  } else if (name == "triangularization") {
    out.push_back(check_triangularization_on_surface(100, seed, c.tol("triangularization")));
    out.push_back(check_triangularization_off_surface(100, seed));
    out.push_back(check_parameter_map_sampled(100, seed, c.tol("parameter_map")));
    const Gauge g = triangular_gauge(c);
    if (need_gauge(g, "b_sign_invariance")) {
      out.push_back(check_b_sign_invariance(p, *g.right, *g.left, 5, seed, c.tol("b_sign")));
    }
  } else if (name == "isospectrality") {
    out.push_back(
        check_isospectrality(p, as_general(c.right), as_general(c.left), 5, seed, c.tol("isospectrality")));
  } else {
    throw InputError("unknown check: " + name);
  }
  return out;
}

}  // namespace

std::vector<CheckReport> run_suite(const SuiteConfig& config, const std::vector<std::string>& selection) {
  const std::vector<std::string> all = suite_names();
  std::vector<std::string> names = selection.empty() ? all : selection;
  for (const auto& n : names) {
    if (std::find(all.begin(), all.end(), n) == all.end()) throw InputError("unknown check: " + n);
  }
  std::vector<std::future<std::vector<CheckReport>>> jobs;
  const Sampler root(config.seed);
  for (const auto& n : names) {
    const auto idx = static_cast<std::uint64_t>(std::find(all.begin(), all.end(), n) - all.begin());
    const std::uint64_t seed = root.derive(idx);
    jobs.push_back(std::async(std::launch::async, [n, seed, &config] {
      try {
        return run_one(n, config, seed);
      } catch (const InputError&) {
        throw;
      } catch (const Error& e) {
        return std::vector<CheckReport>{failed(n, seed, e.what())};
      }
    }));
  }
  std::vector<CheckReport> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
  return out;
}

}  // namespace openchain
