#pragma once

// Scalar evaluators for the open XXX chain with upper-triangular boundaries.
//
// Every evaluator checks each denominator against pole_threshold(eta) and
// throws PoleError naming the kernel and the offending factor; none returns a
// silently huge number. All functions are pure.

#include <span>
#include <utility>
#include <vector>

#include "openchain/params.hpp"

namespace openchain {

struct RWeights {
  cx a, b, c;
};

/// a(u) = u + eta, b(u) = u, c = eta.
RWeights r_weights(cx u, cx eta);

struct ExchangeKernels {
  cx f, h, g, w, k, n;
};

/// Coefficients of the A-B and D-B exchange relations.
ExchangeKernels exchange_kernels(cx u, cx v, cx eta);

cx kernel_f(cx u, cx v, cx eta);
cx kernel_h(cx u, cx v, cx eta);

struct CbKernels {
  cx m, l, p, q, y, z;
};

/// Coefficients of the [C(u), B(v)] expansion.
CbKernels cb_kernels(cx u, cx v, cx eta);

struct ZKernels {
  cx z11, z12, z22;
};

/// Z11(u,x_i,x_j), Z12(u,x_i,x_j), Z22(u,x_i,x_j). Z12 is not symmetric; the
/// swapped value is z_kernels(u, x_j, x_i, eta).z12.
ZKernels z_kernels(cx u, cx x_i, cx x_j, cx eta);

cx kernel_z11(cx u, cx x_i, cx x_j, cx eta);
cx kernel_z12(cx u, cx x_i, cx x_j, cx eta);
cx kernel_z22(cx u, cx x_i, cx x_j, cx eta);

struct BoundaryKernels {
  cx kappa1, kappa2, kappa12, xi;
};

cx kappa1(cx u, cx abar, cx bbar, cx eta);
cx kappa2(cx u, cx abar, cx bbar, cx eta);
cx kappa12(cx u, cx cbar, cx eta);
/// Xi(u) = (2u+eta)(bbar(u+eta)+abar) / (2u(abar-bbar u)).
cx xi_factor(cx u, cx abar, cx bbar, cx eta);

/// All four left-boundary coefficients; requires u != 0 and abar - bbar u != 0.
BoundaryKernels boundary_kernels(cx u, const TriangularBoundary& left, cx eta);

/// Pseudo-vacuum eigenvalue of A(u).
cx lambda1(cx u, const ModelParams& params, cx a, cx b);
/// Pseudo-vacuum eigenvalue of D(u).
cx lambda2(cx u, const ModelParams& params, cx a, cx b);

/// (Lambda1(u), Lambda2(u)) for the right boundary's (a, b); c is unused.
std::pair<cx, cx> vacuum_lambdas(cx u, const ModelParams& params, const TriangularBoundary& right);

/// Lambda1(u) prod f(u,x_k) and Lambda2(u) prod h(u,x_k).
std::pair<cx, cx> dressed_lambdas(cx u, std::span<const cx> xs, const ModelParams& params,
                                  const TriangularBoundary& right);

struct OffDiagonal {
  cx m, n;
};

/// M_k and N_k of the A and D actions; k is a 0-based position in xs.
OffDiagonal offdiag_MN(cx u, std::span<const cx> xs, int k, const ModelParams& params,
                       const TriangularBoundary& right);

/// G_i of the C action; i is a 0-based position in xs.
cx creation_G(cx u, std::span<const cx> xs, int i, const ModelParams& params,
              const TriangularBoundary& right);

/// F_ij of the C action; 0-based positions with i < j.
cx creation_F(cx u, std::span<const cx> xs, int i, int j, const ModelParams& params,
              const TriangularBoundary& right);

/// Subset weight W_I(u) of the Bethe vector. Pairs j<k in the denominator
/// follow root order.
cx bethe_weight_W(const IndexSet& subset, const RootSet& roots, const ModelParams& params,
                  const TriangularBoundary& right, const TriangularBoundary& left);

/// W_I / cbar, finite when cbar = 0 (W_I carries one power of cbar per
/// complement element). Requires a nonempty complement.
cx bethe_weight_W_over_cbar(const IndexSet& subset, const RootSet& roots,
                            const ModelParams& params, const TriangularBoundary& right,
                            const TriangularBoundary& left);

/// Transfer-matrix eigenvalue carried by the roots.
cx eigenvalue_Lambda(cx u, const RootSet& roots, const ModelParams& params,
                     const SpectralBoundary& bnd);

struct BetheResidual {
  /// Lambda1(u_k) prod f - Xi(u_k) Lambda2(u_k) prod h
  std::vector<cx> components;
  /// |Lambda1 prod f| + |Xi Lambda2 prod h| per component
  std::vector<double> scales;

  /// max_k |components[k]| / scales[k]; 0 for an empty set.
  double relative_norm() const;
};

/// Denominator-cleared Bethe equations. Depends on (a, b, abar, bbar) only.
BetheResidual bethe_residual(const RootSet& roots, const ModelParams& params,
                             const SpectralBoundary& bnd);

/// A value that is expected to cancel, with the magnitude of the terms that
/// cancel in it.
struct CancellingSum {
  cx value{};
  double term_scale = 0.0;

  /// |value| / max(1, term_scale)
  double relative() const;
};

/// Coefficient of Lambda1^l(u, u_I) |B(u_I)> in (t(u) - Lambda(u)) Phi.
CancellingSum proof_coef1(cx u, const IndexSet& subset, const RootSet& roots,
                          const ModelParams& params, const TriangularBoundary& right,
                          const TriangularBoundary& left);

/// Coefficient X(u) of B(u)|B(u_I)>, assembled from W, M, N, F and kappas.
CancellingSum proof_X(cx u, const IndexSet& subset, const RootSet& roots,
                      const ModelParams& params, const TriangularBoundary& right,
                      const TriangularBoundary& left);

/// L(u, u_j) of the rewritten X(u).
cx rewritten_L(cx u, cx uj, const TriangularBoundary& left, cx eta);
/// Q(u, u_j, u_l) of the rewritten X(u).
cx rewritten_Q(cx u, cx uj, cx ul, const TriangularBoundary& left, cx eta);

/// X(u) in the rewritten L/Q form, multiplied by (u+eta) W_I / cbar so it is
/// directly comparable with proof_X. Uses only the Bethe substitution for
/// Lambda1(u_j), so it agrees with proof_X on shell. Requires |complement| >= 2.
CancellingSum proof_X_rewritten(cx u, const IndexSet& subset, const RootSet& roots,
                                const ModelParams& params, const TriangularBoundary& right,
                                const TriangularBoundary& left);

}  // namespace openchain
