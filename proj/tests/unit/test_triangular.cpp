#include <gtest/gtest.h>

#include <cmath>

#include "openchain/errors.hpp"
#include "openchain/lattice.hpp"
#include "openchain/sampling.hpp"
#include "openchain/triangular.hpp"

using namespace openchain;

TEST(Constraint, RaisingLoweringPairIsOne) {
  const GeneralBoundary raising{1, 0, 1, 0}, lowering{1, 0, 0, 1};
  EXPECT_EQ(constraint_value(raising, lowering), cx(1));
  try {
    triangularize(raising, lowering);
    FAIL() << "expected NotTriangularizableError";
  } catch (const NotTriangularizableError& e) {
    EXPECT_EQ(e.constraint_value(), cx(1));
  }
}

TEST(Triangularize, DiagonalInputGivesIdentity) {
  const TriangularizationResult t = triangularize(GeneralBoundary{1, 0.3, 0, 0}, GeneralBoundary{0.5, -0.2, 0, 0});
  EXPECT_TRUE(t.identity_M);
  EXPECT_LT(relative_difference(t.M, CMatrix::identity(2)), 1e-15);
}

TEST(Triangularize, PrintedMatrixOracle) {
  // beta=2, gamma=3, delta=1 on both sides (proportional K0, constraint 0).
  const GeneralBoundary r{1, 2, 3, 1}, l{0.5, 2, 3, 1};
  const TriangularizationResult t = triangularize(r, l);
  ASSERT_TRUE(t.printed_M);
  const double s7 = std::sqrt(7.0);
  EXPECT_NEAR(std::abs(determinant(t.M) - (10 + 4 * s7)), 0.0, 1e-12);
  const CMatrix k0 = conjugate(t.M, CMatrix{{2, 3}, {1, -2}});
  EXPECT_LT(relative_difference(k0, CMatrix{{s7, 4}, {0, -s7}}), 1e-14);
  EXPECT_NEAR(std::abs(t.right_tri.c - 4.0), 0.0, 1e-13);
}

TEST(Triangularize, NilpotentFallback) {
  // K0 = [[1, 1], [-1, -1]] is nilpotent: b = 0 and the printed M is singular.
  const GeneralBoundary r{1, 1, 1, -1}, l{2, 1, 1, -1};
  const TriangularizationResult t = triangularize(r, l);
  EXPECT_FALSE(t.printed_M);
  const CMatrix k0 = conjugate(t.M, CMatrix{{1, 1}, {-1, -1}});
  EXPECT_NEAR(std::abs(k0(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(k0(0, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(k0(1, 1)), 0.0, 1e-14);
  const CMatrix m{{1, 1}, {-1, 0}};
  EXPECT_LT(relative_difference(conjugate(m, CMatrix{{1, 1}, {-1, -1}}), CMatrix{{0, 1}, {0, 0}}), 1e-15);
}

TEST(Triangularize, OnSurfaceDrawsAndParameterMap) {
  Sampler s(31);
  int printed = 0;
  for (int i = 0; i < 50; ++i) {
    const auto [r, l] = constraint_surface_pair(s);
    const TriangularizationResult t = triangularize(r, l);
    EXPECT_LT(t.lower_left_residuals[0], 1e-10);
    EXPECT_LT(t.lower_left_residuals[1], 1e-10);
    EXPECT_LT(t.diagonal_residuals[0], 1e-10);
    EXPECT_LT(t.diagonal_residuals[1], 1e-10);
    if (t.printed_M) {
      ++printed;
      EXPECT_TRUE(verify_parameter_map(r, l, t).passed);
    }
  }
  EXPECT_GT(printed, 40);
}

TEST(Triangularize, OffSurfaceRejected) {
  Sampler s(32);
  int drawn = 0;
  while (drawn < 30) {
    const GeneralBoundary r = random_general_boundary(s), l = random_general_boundary(s);
    if (std::abs(constraint_value(r, l)) <= 0.1) continue;
    ++drawn;
    EXPECT_THROW(triangularize(r, l), NotTriangularizableError);
  }
}

TEST(Triangularize, ConjugatedKMatricesAreUpperTriangularAtAnyU) {
  Sampler s(33);
  const auto [r, l] = constraint_surface_pair(s);
  const TriangularizationResult t = triangularize(r, l);
  for (int i = 0; i < 5; ++i) {
    const cx u = s.annulus();
    EXPECT_LT(std::abs(conjugate(t.M, build_K(u, r, Side::right, 1.0))(1, 0)), 1e-10);
    EXPECT_LT(std::abs(conjugate(t.M, build_K(u, l, Side::left, 1.0))(1, 0)), 1e-10);
  }
}
