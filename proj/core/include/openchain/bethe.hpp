#pragma once

// Bethe vectors, Bethe-equation solving and eigenpair verification.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "openchain/linalg.hpp"
#include "openchain/params.hpp"
#include "openchain/report.hpp"
#include "openchain/sampling.hpp"

namespace openchain {

/// All 2^n subsets of {0..n-1}, grouped by size, lexicographic within a size.
std::vector<IndexSet> enumerate_index_sets(int n);

/// The fixed spectral points of the eigenvalue fingerprint.
std::array<cx, 5> fingerprint_grid();

struct BetheState {
  int n = 0;
  RootSet roots;
  /// Relative norm of the cleared Bethe residual.
  double residual_norm = 0.0;
  /// Lambda(u) on fingerprint_grid(); NaN entries where the grid hits a pole.
  std::vector<cx> lambda_fingerprint;
  /// Some pair of roots is closer than the near-degeneracy threshold.
  bool near_degenerate = false;
  /// States sharing a family id have identical fingerprints.
  int family = -1;
};

/// Evaluates residual and fingerprint for the given roots.
BetheState make_state(RootSet roots, const ModelParams& params, const SpectralBoundary& bnd);

json to_json(const BetheState& s);

struct BetheVector {
  BetheState state;
  CVector vector;
  /// (I, W_I) pairs that entered the sum.
  std::vector<std::pair<IndexSet, cx>> trace;
};

/// Phi = sum_I W_I prod_{i in I} B(u_i) |Omega>. With `reversed`, the B factors
/// of each product are applied in the opposite order. Throws NumericalError
/// when the sum cancels to zero.
BetheVector build_bethe_vector(const BetheState& state, const ModelParams& params,
                               const TriangularBoundary& right, const TriangularBoundary& left,
                               bool reversed = false);

/// prod_i B(u_i) |Omega> in the given root order.
CVector b_product_on_vacuum(std::span<const cx> xs, const ModelParams& params, const TriangularBoundary& right);

/// The pseudo-vacuum (all spins up) on L sites.
CVector vacuum(int length);

struct SolverConfig {
  int starts = 200;
  double newton_tol = 1e-11;
  int max_iter = 100;
  int halvings = 20;
  double dedup_tol = 1e-6;
  double degenerate_tol = 1e-8;
  double near_degenerate_tol = 1e-4;
  double fingerprint_tol = 1e-9;
  std::uint64_t seed = 20121;
  /// Roots larger than this (times the natural scale of the data) count as runaway.
  double root_bound = 1e4;
  /// Extra rounds of `starts` tried when a round yields no state.
  int retry_rounds = 15;
  /// Permit n > L.
  bool allow_excess = false;
  /// Worker threads for the multistart; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct SolveDiagnostics {
  int starts = 0;
  int converged = 0;
  int not_converged = 0;
  int singular_jacobian = 0;
  int pole_hits = 0;
  int excluded = 0;
  int degenerate = 0;
  int duplicates = 0;
  int runaway = 0;
  int rounds = 0;
  bool excess_override = false;

  json to_json() const;
};

struct SolveResult {
  std::vector<BetheState> states;
  SolveDiagnostics diagnostics;
};

/// Damped Newton with multistart on the cleared Bethe equations. Depends only
/// on (a, b, abar, bbar). States are sorted and deduplicated.
SolveResult solve_bethe(int n, const ModelParams& params, const SpectralBoundary& bnd,
                        const SolverConfig& config = {});

/// One polished Newton run from `start`; nothing if it does not converge.
std::optional<RootSet> newton_refine(std::vector<cx> start, const ModelParams& params,
                                     const SpectralBoundary& bnd, const SolverConfig& config = {});

struct ProbeRow {
  cx u;
  cx lambda;
  double residual = 0.0;
};

struct EigenpairVerification {
  CheckReport report;
  std::vector<ProbeRow> probes;
  /// Dense eigenvalue comparison (dimension <= 64 only).
  bool dense_checked = false;
  double max_eigenvalue_distance = 0.0;
  bool eigenvalues_matched = true;

  bool ok() const { return report.passed && eigenvalues_matched; }
};

/// r(u) = ||t Phi - Lambda Phi|| / (||t||_F ||Phi||) at `probes` random points;
/// also matches Lambda(u) against the dense spectrum of t(u) within `match_tol`.
EigenpairVerification verify_eigenpair(const BetheState& state, const ModelParams& params,
                                       const TriangularBoundary& right, const TriangularBoundary& left,
                                       int probes, std::uint64_t seed, double eig_tol = 1e-8,
                                       double match_tol = 1e-6);

/// Random spectral point, away from the poles of Lambda(u) for these roots.
cx admissible_probe(Sampler& s, const ModelParams& params, std::span<const cx> roots);

}  // namespace openchain
