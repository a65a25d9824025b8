#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "openchain/errors.hpp"
#include "openchain/report.hpp"
#include "openchain/sampling.hpp"
#include "openchain/triangular.hpp"

using namespace openchain;

TEST(Report, RecordAndFinalize) {
  CheckReport r;
  r.tolerance = 1e-3;
  r.record(1e-5);
  r.record(2e-4);
  r.finalize();
  EXPECT_EQ(r.samples, 2);
  EXPECT_DOUBLE_EQ(r.max_residual, 2e-4);
  EXPECT_TRUE(r.passed);
}

TEST(Report, NanPoisons) {
  CheckReport r;
  r.tolerance = 1.0;
  r.record(std::numeric_limits<double>::quiet_NaN());
  r.record(0.0);
  r.finalize();
  EXPECT_FALSE(r.passed);
  const json j = r.to_json();
  EXPECT_TRUE(j["max_residual"].is_string());
}

TEST(Report, KindsDecideAcceptability) {
  CheckReport r;
  r.tolerance = 1e-6;
  r.record(0.5);
  r.finalize();
  r.kind = CheckKind::normative;
  EXPECT_FALSE(r.acceptable());
  r.kind = CheckKind::control;
  EXPECT_TRUE(r.acceptable());
  r.kind = CheckKind::informational;
  EXPECT_TRUE(r.acceptable());
}

TEST(Report, ComplexJson) {
  EXPECT_EQ(complex_to_json(cx(1.5, -2)).dump(), "[1.5,-2.0]");
  EXPECT_EQ(complex_from_json(json::parse("[1.5, -2]")), cx(1.5, -2));
  EXPECT_EQ(complex_from_json(json(3)), cx(3));
  EXPECT_THROW(complex_from_json(json::parse("[1]")), InputError);
  EXPECT_THROW(complex_from_json(json("x")), InputError);
}

TEST(Report, SuiteSummary) {
  CheckReport a, b;
  a.check_name = "b_check";
  a.tolerance = 1;
  a.record(0.1);
  a.finalize();
  b.check_name = "a_control";
  b.kind = CheckKind::control;
  b.tolerance = 1e-9;
  b.record(0.1);
  b.finalize();
  const json j = suite_to_json({a, b});
  EXPECT_EQ(j["checks"][0]["check_name"], "a_control");
  EXPECT_EQ(j["summary"]["total"], 2);
  EXPECT_EQ(j["summary"]["controls_failed_as_expected"], 1);
  EXPECT_TRUE(j["summary"]["ok"].get<bool>());
}

TEST(Sampler, ReproducibleAndDerived) {
  Sampler a(123), b(123);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_NE(a.derive(1), a.derive(2));
  EXPECT_EQ(Sampler(5).derive(3), Sampler(5).derive(3));
}

TEST(Sampler, AnnulusBounds) {
  Sampler s(9);
  for (int i = 0; i < 200; ++i) {
    const double r = std::abs(s.annulus(0.5, 1.5));
    EXPECT_GE(r, 0.5);
    EXPECT_LE(r, 1.5);
  }
}

TEST(Sampler, ConstraintSurfacePairs) {
  Sampler s(10);
  for (int i = 0; i < 100; ++i) {
    const auto [r, l] = constraint_surface_pair(s);
    EXPECT_LT(std::abs(constraint_value(r, l)), 1e-10 * constraint_scale(r, l));
  }
}
