#pragma once

// Brute-force numerical checks of the chain's identities. Every check draws its
// random points from a Sampler seeded with the given seed and returns a
// CheckReport that records the inputs, the seed and the worst residual.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "openchain/bethe.hpp"
#include "openchain/lattice.hpp"
#include "openchain/params.hpp"
#include "openchain/report.hpp"
#include "openchain/triangular.hpp"

namespace openchain {

using RFunction = std::function<CMatrix(cx)>;
using KFunction = std::function<CMatrix(cx)>;

/// ||R12 R13 R23 - R23 R13 R12||_F / ||R12 R13 R23||_F at (u, v, w).
double ybe_residual(const RFunction& r, cx u, cx v, cx w);
CheckReport check_ybe(cx eta, int samples, std::uint64_t seed, double tol = 1e-12);
/// Same check on an arbitrary R(u) (negative controls).
CheckReport check_ybe(const RFunction& r, const std::string& name, int samples, std::uint64_t seed,
                      double tol = 1e-12);

CheckReport check_unitarity(cx eta, int samples, std::uint64_t seed, double tol = 1e-12);

/// Reflection equation for the dressed B on the doubled auxiliary space.
double reflection_residual(const ModelParams& params, const KFunction& k, cx u, cx v);
CheckReport check_reflection(const ModelParams& params, const Boundary& right, int samples,
                             std::uint64_t seed, double tol = 1e-9);
CheckReport check_reflection(const ModelParams& params, const KFunction& k, const std::string& name,
                             int samples, std::uint64_t seed, double tol = 1e-9);

enum class CommutationAblation { none, drop_g, drop_n, drop_z };

/// The four exchange relations as operator identities at random (u, v).
CheckReport check_commutation_relations(const ModelParams& params, const Boundary& right, int samples,
                                        std::uint64_t seed, double tol = 1e-9,
                                        CommutationAblation ablation = CommutationAblation::none);

enum class ActionAblation { none, swap_z12 };

/// Actions of A, D and C on prod B(x_i)|Omega> for every prefix of xs.
CheckReport check_action_formulas(const ModelParams& params, const TriangularBoundary& right,
                                  std::span<const cx> xs, int samples, std::uint64_t seed, double tol = 1e-8,
                                  ActionAblation ablation = ActionAblation::none);

/// Pseudo-vacuum relations in the triangular gauge.
CheckReport check_vacuum(const ModelParams& params, const TriangularBoundary& right,
                         const TriangularBoundary& left, int samples, std::uint64_t seed, double tol = 1e-10);
/// ||C(u)|Omega>|| / ||C(u)||_F for a general right boundary; a control that
/// fails whenever delta != 0.
CheckReport check_vacuum_annihilation(const ModelParams& params, const GeneralBoundary& right, int samples,
                                      std::uint64_t seed, double tol = 1e-10);

/// coef1 (|complement| >= 1) and X (|complement| >= 2) at random u for all I.
CheckReport check_proof_coefficients(const RootSet& roots, const ModelParams& params,
                                     const TriangularBoundary& right, const TriangularBoundary& left, int samples,
                                     std::uint64_t seed, double tol = 1e-7);
/// X in the exchange form against the rewritten L/Q form.
CheckReport check_proof_dual_form(const RootSet& roots, const ModelParams& params,
                                  const TriangularBoundary& right, const TriangularBoundary& left, int samples,
                                  std::uint64_t seed, double tol = 1e-9);

/// Bethe eigenvalues against the dense spectrum of t(u) for N = 0..n_max.
/// `lambda_scale` multiplies Lambda (1 for the check, != 1 for a control).
CheckReport check_spectrum_match(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int n_max, std::uint64_t seed,
                                 const SolverConfig& solver = {}, double tol = 1e-6, cx lambda_scale = 1.0);

/// Phi against prod B(u_i)|Omega> when cbar is (close to) zero.
CheckReport check_cbar_reduction(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, const RootSet& roots, std::uint64_t seed,
                                 double tol = 1e-14);

/// Bethe roots for a sweep of (c, cbar) values: the solver never sees c, so
/// the roots must coincide; each sweep point is also eigen-verified.
CheckReport check_c_independence(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int n, std::span<const cx> c_values,
                                 std::uint64_t seed, const SolverConfig& solver = {}, double tol = 1e-9);

/// ||t(-u-eta) - t(u)|| / ||t(u)||; informational.
CheckReport probe_crossing(const ModelParams& params, const Boundary& right, const Boundary& left, int samples,
                           std::uint64_t seed);

/// [t(u), t(v)] at random pairs.
CheckReport check_transfer_commutativity(const ModelParams& params, const Boundary& right,
                                         const Boundary& left, int samples, std::uint64_t seed,
                                         double tol = 1e-10);
/// Trace form against kappa1 A + kappa2 D + kappa12 C.
CheckReport check_transfer_forms(const ModelParams& params, const TriangularBoundary& right,
                                 const TriangularBoundary& left, int samples, std::uint64_t seed,
                                 double tol = 1e-11);

/// Central-difference dt/du at 0.
CMatrix transfer_derivative_at_zero(const ModelParams& params, const Boundary& right, const Boundary& left,
                                    double step = 1e-6);
/// ||H - factor * dt/du(0)||_F / ||H||_F.
CheckReport check_hamiltonian(const ModelParams& params, const GeneralBoundary& right,
                              const GeneralBoundary& left, cx factor, const std::string& name,
                              double tol = 1e-6, double step = 1e-6);

/// On-surface draws triangularize with small lower-left residuals.
CheckReport check_triangularization_on_surface(int draws, std::uint64_t seed, double tol = 1e-10);
/// Off-surface draws (|constraint| > 0.1) must all be rejected; residual is
/// the fraction accepted.
CheckReport check_triangularization_off_surface(int draws, std::uint64_t seed);
/// a = alpha, b^2 = beta^2 + gamma delta, c = gamma + delta over on-surface draws.
CheckReport check_parameter_map_sampled(int draws, std::uint64_t seed, double tol = 1e-10);
/// Spectrum of t(u) under (b, bbar) -> (-b, -bbar) in the triangular gauge.
CheckReport check_b_sign_invariance(const ModelParams& params, const TriangularBoundary& right,
                                    const TriangularBoundary& left, int samples, std::uint64_t seed,
                                    double tol = 1e-8);

/// Spectrum of t(u) for (K, Kbar) against (M^-1 K M, M^-1 Kbar M).
CheckReport check_isospectrality(const ModelParams& params, const GeneralBoundary& right,
                                 const GeneralBoundary& left, int samples, std::uint64_t seed,
                                 double tol = 1e-8);

/// Relative distance of two spectra after matching.
double spectrum_distance(const std::vector<cx>& a, const std::vector<cx>& b);

// --- suite ---------------------------------------------------------------

struct SuiteConfig {
  ModelParams params = ModelParams::homogeneous(1.0, 2);
  Boundary right = GeneralBoundary{1.0, 0.0, 0.0, 0.0};
  Boundary left = GeneralBoundary{1.0, 0.0, 0.0, 0.0};
  std::uint64_t seed = 20121;
  std::map<std::string, double> tolerances;
  SolverConfig solver;
  /// Largest N for Bethe-based checks; negative means L.
  int n_max = -1;
  /// Constant added to K(u)_12 in the reflection check (negative fixtures).
  std::optional<cx> right_k_offset;

  double tol(const std::string& name) const;
};

/// Default tolerance per name.
const std::map<std::string, double>& default_tolerances();

/// Names accepted by run_suite, in canonical order.
std::vector<std::string> suite_names();

/// Runs the selected checks (all if empty) concurrently; reports are merged in
/// name order. Throws InputError on an unknown name.
std::vector<CheckReport> run_suite(const SuiteConfig& config, const std::vector<std::string>& selection = {});

}  // namespace openchain
