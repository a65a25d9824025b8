#pragma once

// Simultaneous upper-triangularization of the two boundary matrices.

#include <array>

#include "openchain/linalg.hpp"
#include "openchain/params.hpp"
#include "openchain/report.hpp"

namespace openchain {

struct TriangularizationResult {
  CMatrix M;
  TriangularBoundary right_tri;
  TriangularBoundary left_tri;
  /// |(2,1) entry| / ||.||_F of M^-1 K(u) M and M^-1 Kbar(u) M at the probe point.
  std::array<double, 2> lower_left_residuals{};
  /// Distance of the conjugated diagonals from {alpha + u b, alpha - u b} (and barred).
  std::array<double, 2> diagonal_residuals{};
  cx constraint_value;
  cx probe;
  /// M is the printed [[b+beta, delta], [delta, b+beta]].
  bool printed_M = false;
  /// Both boundaries were already upper triangular; M = I.
  bool identity_M = false;
};

/// (dbar gamma - delta gbar)^2 - 4 (beta gbar - bbar gamma)(dbar beta - delta bbar).
cx constraint_value(const GeneralBoundary& right, const GeneralBoundary& left);

/// max(1, max|parameter|^4), the scale the constraint tolerance is relative to.
double constraint_scale(const GeneralBoundary& right, const GeneralBoundary& left);

/// Principal square root with Re >= 0, ties broken by Im >= 0.
cx principal_sqrt(cx z);

/// Finds M with M^-1 K M and M^-1 Kbar M upper triangular. Throws
/// NotTriangularizableError when |constraint| > tol * scale and NumericalError
/// when no common eigenvector is found.
TriangularizationResult triangularize(const GeneralBoundary& right, const GeneralBoundary& left,
                                      double tol = 1e-8, cx probe = cx{0.7, 0.3}, cx eta = 1.0);

/// a = alpha, b^2 = beta^2 + gamma delta, c = gamma + delta and barred
/// analogues. The c checks are skipped (and noted) when the fallback M was used.
CheckReport verify_parameter_map(const GeneralBoundary& right, const GeneralBoundary& left,
                                 const TriangularizationResult& result, double tolerance = 1e-10);

/// M^-1 g M for a 2x2 g.
CMatrix conjugate(const CMatrix& M, const CMatrix& g);

}  // namespace openchain
