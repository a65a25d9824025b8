#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "openchain/errors.hpp"
#include "openchain/kernels.hpp"
#include "openchain/lattice.hpp"
#include "openchain/sampling.hpp"

using namespace openchain;

TEST(RMatrix, AtZeroIsEtaTimesPermutation) {
  const cx eta(0.7, 0.2);
  EXPECT_LT(relative_difference(build_R(0.0, eta), eta * permutation_matrix()), 1e-15);
}

TEST(RMatrix, Entries) {
  const CMatrix r = build_R(2.0, 1.0);
  EXPECT_EQ(r(0, 0), cx(3));
  EXPECT_EQ(r(1, 1), cx(2));
  EXPECT_EQ(r(1, 2), cx(1));
  EXPECT_EQ(r(3, 3), cx(3));
  EXPECT_EQ(r(0, 3), cx(0));
}

TEST(Monodromy, InverseAtMinusMatchesDenseInverse) {
  Sampler s(21);
  const ModelParams p = random_model(s, 3);
  for (int i = 0; i < 5; ++i) {
    const cx u = admissible_spectral_point(s, p);
    const CMatrix t = build_monodromy(-u, p).assembled();
    const CMatrix tinv = build_inverse_monodromy_at_minus(u, p).assembled();
    EXPECT_LT(relative_difference(t * tinv, CMatrix::identity(t.rows())), 1e-12);
    EXPECT_LT(relative_difference(tinv, inverse(t).inverse), 1e-10);
  }
}

TEST(Monodromy, PoleGuard) {
  const ModelParams p = ModelParams::homogeneous(1.0, 2);
  EXPECT_THROW(build_inverse_monodromy_at_minus(1.0, p), PoleError);
}

TEST(KMatrix, LeftTriangularOracle) {
  const CMatrix kb = build_K(1.0, TriangularBoundary{2.0, 1.0, 1.0}, Side::left, 1.0);
  EXPECT_LT(relative_difference(kb, CMatrix{{0, -2}, {0, 4}}), 1e-15);
}

TEST(KMatrix, RightGeneralForm) {
  const GeneralBoundary g{1.0, 0.5, 2.0, -1.0};
  const CMatrix k = build_K(2.0, g, Side::right, 1.0);
  EXPECT_LT(relative_difference(k, CMatrix{{2.0, 4.0}, {-2.0, 0.0}}), 1e-15);
  EXPECT_LT(relative_difference(build_K_derivative(g), CMatrix{{0.5, 2.0}, {-1.0, -0.5}}), 1e-15);
}

TEST(DualReflection, ScalarKbar) {
  const CheckReport r = check_dual_reflection(GeneralBoundary{0.8, cx(0.3, 0.1), -0.6, 1.1}, 1.0, 20, 5);
  EXPECT_TRUE(r.passed) << r.max_residual;
}

TEST(DoubleRow, VacuumEigenvaluesInTriangularGauge) {
  const ModelParams p(1.0, std::vector<cx>{0.1, -0.25});
  const TriangularBoundary right{1.3, 0.4, 0.7};
  const cx u(0.35, 0.15);
  const DoubleRowBlocks d = build_double_row(u, p, Boundary{right});
  const auto [l1, l2] = vacuum_lambdas(u, p, right);
  EXPECT_NEAR(std::abs(d.A(0, 0) - l1), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(d.D(0, 0) - l2), 0.0, 1e-12);
  for (std::size_t i = 0; i < d.C.rows(); ++i) EXPECT_NEAR(std::abs(d.C(i, 0)), 0.0, 1e-12);
}

TEST(DoubleRow, GuardsTwoUPlusEta) {
  EXPECT_THROW(build_double_row(-0.5, ModelParams::homogeneous(1.0, 2), Boundary{TriangularBoundary{1, 0, 0}}),
               PoleError);
}

TEST(Transfer, SingleSiteSpectrumOracle) {
  // Exact eigenvalues from the symbolic L=1 construction in oracles.py.
  const ModelParams p = ModelParams::homogeneous(1.0, 1);
  const CMatrix t = transfer_matrix(0.4, p, Boundary{TriangularBoundary{1.0, 0.3, 0.5}},
                                    Boundary{TriangularBoundary{2.0, 1.0, 1.0 / 3}});
  EXPECT_LT(multiset_distance(eigenvalues(t), {17512.0 / 2625, 20312.0 / 2625}), 1e-12);
}

TEST(Transfer, FormsAgreeAndCommute) {
  Sampler s(22);
  const ModelParams p = random_model(s, 3);
  const Boundary r{TriangularBoundary{1.1, 0.3, -0.8}}, l{TriangularBoundary{0.6, 0.9, 0.4}};
  const cx u = admissible_spectral_point(s, p), v = admissible_spectral_point(s, p);
  const TransferMatrix tu = build_transfer(u, p, r, l);
  ASSERT_TRUE(tu.triangular_form.has_value());
  EXPECT_LT(tu.form_mismatch, 1e-12);
  const CMatrix tv = transfer_matrix(v, p, r, l);
  EXPECT_LT(relative_difference(tu.trace_form * tv, tv * tu.trace_form), 1e-11);
}

TEST(Transfer, GeneralLeftHasNoTriangularForm) {
  const ModelParams p = ModelParams::homogeneous(1.0, 2);
  const TransferMatrix t = build_transfer(0.3, p, Boundary{GeneralBoundary{1, 0.2, 0.3, 0.4}},
                                          Boundary{GeneralBoundary{1, 0.1, 0.2, 0.5}});
  EXPECT_FALSE(t.triangular_form.has_value());
  EXPECT_EQ(t.form_mismatch, 0.0);
}

TEST(TransferFamily, CacheMatchesDirectAndIsThreadSafe) {
  const ModelParams p(1.0, std::vector<cx>{0.1, 0.2});
  const Boundary r{TriangularBoundary{1.1, 0.3, -0.8}}, l{TriangularBoundary{0.6, 0.9, 0.4}};
  const TransferFamily cached(p, r, l), plain(p, r, l, false);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (int i = 0; i < 10; ++i) {
        const cx u(0.1 * i + 0.05, 0.03 * w);
        EXPECT_EQ(relative_difference(cached.at(u), plain.at(u)), 0.0);
      }
    });
  }
  for (auto& t : workers) t.join();
  EXPECT_EQ(cached.cache_size(), 40u);
  EXPECT_EQ(plain.cache_size(), 0u);
}

TEST(Hamiltonian, ProportionalToTransferDerivative) {
  const ModelParams p = ModelParams::homogeneous(1.0, 3);
  const GeneralBoundary r{1.2, 0.3, 0.5, -0.7}, l{0.9, -0.4, 0.2, 0.6};
  const CMatrix h = build_hamiltonian(p, r, l);
  const double step = 1e-6;
  const CMatrix dt = (1.0 / (2 * step)) * (transfer_matrix(step, p, Boundary{r}, Boundary{l}) -
                                           transfer_matrix(-step, p, Boundary{r}, Boundary{l}));
  EXPECT_LT(relative_difference(h, hamiltonian_derivative_factor(1.0, r, l) * dt), 1e-8);
}

TEST(Hamiltonian, RejectsInhomogeneousOrZeroAlpha) {
  const GeneralBoundary r{1.2, 0.3, 0.5, -0.7}, l{0.9, -0.4, 0.2, 0.6};
  EXPECT_THROW(build_hamiltonian(ModelParams(1.0, std::vector<cx>{0.1, 0.0}), r, l), InputError);
  EXPECT_THROW(build_hamiltonian(ModelParams::homogeneous(1.0, 2), GeneralBoundary{0, 1, 0, 0}, l), InputError);
}
