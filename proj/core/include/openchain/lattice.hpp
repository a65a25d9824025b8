#pragma once

// Operator-valued objects of the open chain. Leg 0 is the auxiliary space and
// legs 1..L the quantum sites; quantum operators live on 2^L dimensions.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>

#include "openchain/linalg.hpp"
#include "openchain/params.hpp"
#include "openchain/report.hpp"

namespace openchain {

/// The 4x4 rational R-matrix.
CMatrix build_R(cx u, cx eta);

/// The 4x4 permutation operator.
CMatrix permutation_matrix();

/// Auxiliary-space blocks of a 2 x 2^L operator.
struct MonodromyBlocks {
  cx u;
  std::array<CMatrix, 4> blocks;  // 11, 12, 21, 22

  const CMatrix& operator()(int i, int j) const { return blocks[static_cast<std::size_t>(2 * i + j)]; }
  /// The full 2*2^L operator with the auxiliary leg first.
  CMatrix assembled() const;
  static MonodromyBlocks split(cx u, const CMatrix& full);
};

/// T(u) = R_a1(u - xi_1) ... R_aL(u - xi_L).
MonodromyBlocks build_monodromy(cx u, const ModelParams& params);

/// T^{-1}(-u) through unitarity: R_aL(u+xi_L)...R_a1(u+xi_1) / prod_j (eta-u-xi_j)(eta+u+xi_j).
MonodromyBlocks build_inverse_monodromy_at_minus(cx u, const ModelParams& params);

enum class Side { right, left };

/// Scalar K-matrix (right) or K-bar (left) at u, for either parameterization.
CMatrix build_K(cx u, const Boundary& bnd, Side side, cx eta);

/// u-derivative of the right K-matrix, [[beta, gamma], [delta, -beta]].
CMatrix build_K_derivative(const GeneralBoundary& right);

/// Residual of the dual reflection equation for the scalar K-bar at `samples`
/// random (u, v).
CheckReport check_dual_reflection(const GeneralBoundary& left, cx eta, int samples,
                                  std::uint64_t seed, double tolerance = 1e-12);

/// Residual of the dual reflection equation for an arbitrary 2x2 matrix
/// function of u (used for negative controls).
double dual_reflection_residual(const std::function<CMatrix(cx)>& kbar, cx u, cx v, cx eta);

struct DoubleRowBlocks {
  cx u;
  CMatrix b11, b12, b21, b22;
  CMatrix A, B, C, D;  // D = b22 - eta/(2u+eta) b11

  /// The full 2*2^L operator B(u) with the auxiliary leg first.
  CMatrix assembled() const;
};

/// B(u) = T(u) K(u) T^{-1}(-u) and the derived A, B, C, D operators.
DoubleRowBlocks build_double_row(cx u, const ModelParams& params, const Boundary& right);

/// Same, from an explicit K(u) 2x2 matrix.
DoubleRowBlocks build_double_row(cx u, const ModelParams& params, const CMatrix& k_at_u);

struct TransferMatrix {
  /// tr_a(Kbar_a(u) B_a(u))
  CMatrix trace_form;
  /// kappa1 A + kappa2 D + kappa12 C, present when the left boundary is triangular.
  std::optional<CMatrix> triangular_form;
  /// Relative difference between the two forms (0 if only one exists).
  double form_mismatch = 0.0;
};

/// Transfer matrix; throws FormMismatchError when the two assemblies differ
/// by more than `form_tolerance`.
TransferMatrix build_transfer(cx u, const ModelParams& params, const Boundary& right,
                              const Boundary& left, double form_tolerance = 1e-11);

/// Convenience: the trace-form transfer matrix.
CMatrix transfer_matrix(cx u, const ModelParams& params, const Boundary& right, const Boundary& left);

/// Evaluation cache over u for a fixed chain. Thread-safe; cached and uncached
/// results are identical.
class TransferFamily {
 public:
  TransferFamily(ModelParams params, Boundary right, Boundary left, bool cache_enabled = true);

  CMatrix at(cx u) const;

  const ModelParams& params() const noexcept { return params_; }
  const Boundary& right() const noexcept { return right_; }
  const Boundary& left() const noexcept { return left_; }
  std::size_t cache_size() const;

 private:
  using Key = std::pair<double, double>;

  ModelParams params_;
  Boundary right_;
  Boundary left_;
  bool cache_enabled_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, CMatrix> cache_;
};

/// Open-chain Hamiltonian for xi = 0:
///   sum_j P_{j,j+1} + Kbar_1(0)/(2 alpha-bar) + (eta/(2 alpha)) K'_L(0),
/// which equals hamiltonian_derivative_factor() * dt/du at u = 0.
CMatrix build_hamiltonian(const ModelParams& params, const GeneralBoundary& right,
                          const GeneralBoundary& left);

/// eta / (4 alpha alpha-bar): the factor with H = factor * t'(0).
cx hamiltonian_derivative_factor(cx eta, const GeneralBoundary& right, const GeneralBoundary& left);

}  // namespace openchain
