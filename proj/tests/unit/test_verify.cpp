#include <gtest/gtest.h>

#include "openchain/errors.hpp"
#include "openchain/lattice.hpp"
#include "openchain/verify.hpp"

using namespace openchain;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.params = ModelParams(1.0, std::vector<cx>{0.1, -0.2});
  c.right = TriangularBoundary{1.3, 0.4, 0.7};
  c.left = TriangularBoundary{0.8, -0.5, 0.6};
  c.solver.starts = 60;
  return c;
}

const CheckReport& find(const std::vector<CheckReport>& rs, const std::string& name) {
  for (const CheckReport& r : rs)
    if (r.check_name == name) return r;
  throw std::runtime_error("missing report " + name);
}

}  // namespace

TEST(Ybe, RationalRPassesCorruptedFails) {
  EXPECT_TRUE(check_ybe(1.0, 50, 1).passed);
  const CheckReport bad = check_ybe(
      [](cx u) {
        CMatrix r = build_R(u, 1.0);
        r(1, 2) *= 1.1;
        r(2, 1) *= 1.1;
        return r;
      },
      "corrupted", 10, 1);
  EXPECT_GT(bad.max_residual, 1e-3);
}

TEST(Reflection, DressedBOnDoubledSpace) {
  const ModelParams p(1.0, std::vector<cx>{0.2, -0.1});
  const GeneralBoundary k{0.9, 0.3, -0.7, 0.5};
  EXPECT_TRUE(check_reflection(p, Boundary{k}, 4, 3).passed);
  const KFunction shifted = [k](cx u) {
    return CMatrix{{u * k.beta + k.alpha, u * k.gamma + 1.0}, {u * k.delta, -u * k.beta + k.alpha}};
  };
  EXPECT_GT(check_reflection(p, shifted, "bad", 2, 3).max_residual, 1e-3);
}

TEST(Commutation, AblationsFail) {
  const ModelParams p(1.0, std::vector<cx>{0.2, -0.1});
  const Boundary k{TriangularBoundary{1.1, 0.4, 0.3}};
  EXPECT_TRUE(check_commutation_relations(p, k, 5, 4).passed);
  for (auto ab : {CommutationAblation::drop_g, CommutationAblation::drop_n, CommutationAblation::drop_z}) {
    const CheckReport r = check_commutation_relations(p, k, 3, 4, 1e-9, ab);
    EXPECT_EQ(r.kind, CheckKind::control);
    EXPECT_GT(r.max_residual, 1e-3);
    EXPECT_TRUE(r.acceptable());
  }
}

TEST(Actions, FormulasAndSwappedControl) {
  const ModelParams p(1.0, std::vector<cx>{0.2, -0.1});
  const TriangularBoundary r{1.1, 0.4, 0.3};
  const std::vector<cx> xs{cx(0.3, 0.4), cx(-0.6, 0.3), cx(0.8, -0.2)};
  EXPECT_TRUE(check_action_formulas(p, r, xs, 2, 5).passed);
  EXPECT_GT(check_action_formulas(p, r, xs, 1, 5, 1e-8, ActionAblation::swap_z12).max_residual, 1e-3);
}

TEST(Vacuum, TriangularPassesGeneralControlFails) {
  const ModelParams p(1.0, std::vector<cx>{0.2, -0.1});
  EXPECT_TRUE(check_vacuum(p, TriangularBoundary{1.1, 0.4, 0.3}, TriangularBoundary{0.7, 0.2, -0.5}, 3, 6).passed);
  const CheckReport ctl = check_vacuum_annihilation(p, GeneralBoundary{1.0, 0.4, 0.7, 0.9}, 3, 6);
  EXPECT_FALSE(ctl.passed);
  EXPECT_TRUE(ctl.acceptable());
}

TEST(Spectrum, CorruptedLambdaIsDetected) {
  const ModelParams p(1.0, std::vector<cx>{0.2, -0.1});
  const TriangularBoundary r{1.3, 0.4, 0.7}, l{0.8, -0.5, 0.6};
  SolverConfig s;
  s.starts = 40;
  const CheckReport good = check_spectrum_match(p, r, l, 2, 8, s);
  EXPECT_TRUE(good.passed) << good.max_residual;
  EXPECT_GT(check_spectrum_match(p, r, l, 1, 8, s, 1e-6, 1.01).max_residual, 1e-3);
}

TEST(Isospectrality, ConjugatedBoundariesShareSpectrum) {
  const GeneralBoundary r{1, 2, 3, 1}, l{0.5, 2, 3, 1};
  EXPECT_TRUE(check_isospectrality(ModelParams(1.0, std::vector<cx>{0.1, 0.3}), r, l, 3, 9).passed);
}

TEST(Isospectrality, NotTriangularizableFailsHonestly) {
  const CheckReport r = check_isospectrality(ModelParams::homogeneous(1.0, 2), GeneralBoundary{1, 0, 1, 0},
                                             GeneralBoundary{1, 0, 0, 1}, 3, 9);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Suite, UnknownNameRejected) {
  EXPECT_THROW(run_suite(small_config(), {"nope"}), InputError);
}

TEST(Suite, SelectedChecksAreOrderedAndAcceptable) {
  const auto reports = run_suite(small_config(), {"vacuum", "ybe", "transfer"});
  for (std::size_t i = 1; i < reports.size(); ++i) EXPECT_LE(reports[i - 1].check_name, reports[i].check_name);
  EXPECT_TRUE(suite_ok(reports));
  EXPECT_EQ(find(reports, "ybe_control_corrupted_R").kind, CheckKind::control);
}

TEST(Suite, DeterministicJson) {
  const auto a = suite_to_json(run_suite(small_config(), {"commutation", "cbar"}));
  const auto b = suite_to_json(run_suite(small_config(), {"cbar", "commutation"}));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Suite, CorruptedKFixtureFails) {
  SuiteConfig c = small_config();
  c.right_k_offset = 1.0;
  const auto reports = run_suite(c, {"reflection"});
  EXPECT_FALSE(find(reports, "reflection").passed);
  EXPECT_FALSE(suite_ok(reports));
}

TEST(Suite, HamiltonianPrintedNormalizationIsInformational) {
  SuiteConfig c = small_config();
  c.right = GeneralBoundary{1.2, 0.3, 0.5, 0.0};
  c.left = GeneralBoundary{0.9, -0.4, 0.2, 0.0};
  const auto reports = run_suite(c, {"hamiltonian"});
  EXPECT_TRUE(find(reports, "hamiltonian").passed);
  const CheckReport& printed = find(reports, "hamiltonian_printed_normalization");
  EXPECT_EQ(printed.kind, CheckKind::informational);
  EXPECT_FALSE(printed.passed);
}
